"""Run the CLI and require a specific exit status."""
import argparse
import subprocess
import sys


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--expect", type=int, required=True)
    ap.add_argument("cmd", nargs=argparse.REMAINDER)
    args = ap.parse_args()
    cmd = args.cmd[1:] if args.cmd and args.cmd[0] == "--" else args.cmd
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != args.expect:
        sys.stderr.write(f"exit {proc.returncode}, expected {args.expect}\n{proc.stdout}\n{proc.stderr}\n")
        return 1
    if proc.returncode == 1 and not proc.stderr.strip():
        sys.stderr.write("input error without a diagnostic\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
