#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nullforge {

enum class TestVerdict { Pass, Fail, Error, Skipped };

std::string to_string(TestVerdict verdict);

struct TestResult {
  std::string id; // "classname.name"
  TestVerdict verdict = TestVerdict::Pass;
};

struct JUnitParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a JUnit-XML-shaped report: one TestResult per <testcase>, with
/// <failure>/<error>/<skipped> children deciding the verdict. Unknown
/// elements and attributes are ignored. Throws JUnitParseError on malformed
/// XML.
std::vector<TestResult> parse_test_report(const std::string& xml);

} // namespace nullforge
