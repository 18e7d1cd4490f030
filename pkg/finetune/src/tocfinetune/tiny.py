"""Build a tiny randomly-initialized checkpoint for CPU smoke runs.

Trains a WordPiece vocabulary on the given texts and pairs it with a small
BERT-architecture token-classification model, all saved locally so smoke
tests never touch the network. The full-size recipe is out of desk scale
(hours on a datacenter GPU); this keeps the identical code path exercisable
in seconds.
"""

from __future__ import annotations

from pathlib import Path

import torch
from tokenizers import Tokenizer, models, normalizers, pre_tokenizers, trainers
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertForTokenClassification, PreTrainedTokenizerFast

from .windows import ID2LABEL, LABEL2ID

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]


def build_tiny_checkpoint(
    out_dir,
    texts,
    vocab_size: int = 800,
    hidden_size: int = 64,
    num_layers: int = 2,
    num_heads: int = 2,
    max_length: int = 512,
    seed: int = 0,
) -> str:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    wp = Tokenizer(models.WordPiece(unk_token="[UNK]"))
    wp.normalizer = normalizers.BertNormalizer(lowercase=True)
    wp.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    trainer = trainers.WordPieceTrainer(vocab_size=vocab_size, special_tokens=SPECIALS)
    wp.train_from_iterator(texts, trainer)
    cls_id = wp.token_to_id("[CLS]")
    sep_id = wp.token_to_id("[SEP]")
    wp.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", cls_id), ("[SEP]", sep_id)],
    )
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=wp,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
        model_max_length=max_length,
    )

    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=wp.get_vocab_size(),
        hidden_size=hidden_size,
        num_hidden_layers=num_layers,
        num_attention_heads=num_heads,
        intermediate_size=hidden_size * 4,
        max_position_embeddings=max_length,
        num_labels=len(LABEL2ID),
        id2label=ID2LABEL,
        label2id=LABEL2ID,
        pad_token_id=tokenizer.pad_token_id,
    )
    model = BertForTokenClassification(config)
    model.save_pretrained(out)
    tokenizer.save_pretrained(out)
    return str(out)
