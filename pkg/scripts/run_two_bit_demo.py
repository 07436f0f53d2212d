#!/usr/bin/env python3
"""Run the full verification chain on the built-in two-bit document."""

import sys

from cvhilbert import cli


def main() -> int:
    doc = cli.document_from_mapping(cli.two_bit_document())
    report = cli.run_verify(doc, context_name="demo:two-bit")
    sys.stdout.write(cli.emit_report(report, "text"))
    return 2 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
