"""Command-line entry points: train, predict, make-tiny."""

from __future__ import annotations

import argparse
import logging
import sys

from .predicting import predict
from .tiny import build_tiny_checkpoint
from .training import TrainConfig, train
from .windows import read_window_file, window_text


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = argparse.ArgumentParser(prog="tocfinetune", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="fine-tune per a YAML config")
    p.add_argument("--config", required=True)

    p = sub.add_parser("predict", help="label windows with a trained checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--windows", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--batch-size", type=int, default=16)

    p = sub.add_parser("make-tiny", help="build a tiny local checkpoint for smoke runs")
    p.add_argument("--windows", required=True, help="window file supplying tokenizer text")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--vocab-size", type=int, default=800)
    p.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    if args.command == "train":
        result = train(TrainConfig.from_yaml(args.config))
        print(f"saved {result.output_dir}; loss {result.initial_loss:.4f} -> {result.final_loss:.4f}")
    elif args.command == "predict":
        predicted = predict(args.checkpoint, args.windows, args.out, args.batch_size)
        print(f"wrote {len(predicted)} windows to {args.out}")
    else:
        texts = [window_text(w)[0] for w in read_window_file(args.windows)]
        path = build_tiny_checkpoint(args.out_dir, texts, args.vocab_size, seed=args.seed)
        print(f"tiny checkpoint at {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
