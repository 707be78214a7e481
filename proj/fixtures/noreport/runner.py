#!/usr/bin/env python3
"""Stand-in build that crashes before writing reports when tests fail."""
import os
import sys

SRC = os.path.join("src", "main", "java", "App.java")
REPORT_DIR = os.path.join("build", "reports")


def main():
    with open(SRC) as f:
        text = f.read()
    if "return null;" in text:
        print("1 test failed; runner aborted before report generation")
        return 1
    os.makedirs(REPORT_DIR, exist_ok=True)
    with open(os.path.join(REPORT_DIR, "TEST-AppTest.xml"), "w") as f:
        f.write('<testsuite name="AppTest" tests="1">\n'
                '  <testcase classname="AppTest" name="testId"/>\n'
                "</testsuite>\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
