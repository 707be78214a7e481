#include <doctest.h>

#include <algorithm>

#include "nullforge/junit.hpp"

using namespace nullforge;

namespace {

const TestResult* find(const std::vector<TestResult>& rs, const std::string& id) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const TestResult& r) { return r.id == id; });
  return it == rs.end() ? nullptr : &*it;
}

} // namespace

TEST_CASE("junit: passes, failures, errors, skips") {
  std::string xml = R"(<?xml version="1.0" encoding="UTF-8"?>
<testsuite name="videostore.CustomerTest" tests="4" failures="1" errors="1" skipped="1">
  <testcase classname="videostore.CustomerTest" name="testStatement" time="0.01"/>
  <testcase classname="videostore.CustomerTest" name="testCharge" time="0.02">
    <failure message="expected 2.0 but was 3.5">stack trace here</failure>
  </testcase>
  <testcase classname="videostore.CustomerTest" name="testNull" time="0.00">
    <error type="java.lang.NullPointerException"/>
  </testcase>
  <testcase classname="videostore.CustomerTest" name="testSlow">
    <skipped/>
  </testcase>
</testsuite>
)";
  auto rs = parse_test_report(xml);
  REQUIRE(rs.size() == 4);
  CHECK(find(rs, "videostore.CustomerTest.testStatement")->verdict == TestVerdict::Pass);
  CHECK(find(rs, "videostore.CustomerTest.testCharge")->verdict == TestVerdict::Fail);
  CHECK(find(rs, "videostore.CustomerTest.testNull")->verdict == TestVerdict::Error);
  CHECK(find(rs, "videostore.CustomerTest.testSlow")->verdict == TestVerdict::Skipped);
}

TEST_CASE("junit: testsuites wrapper and nested suites") {
  std::string xml = R"(<testsuites>
  <testsuite name="a">
    <testcase classname="a.A" name="t1"/>
    <testsuite name="inner">
      <testcase classname="a.B" name="t2"><failure/></testcase>
    </testsuite>
  </testsuite>
</testsuites>)";
  auto rs = parse_test_report(xml);
  REQUIRE(rs.size() == 2);
  CHECK(find(rs, "a.A.t1")->verdict == TestVerdict::Pass);
  CHECK(find(rs, "a.B.t2")->verdict == TestVerdict::Fail);
}

TEST_CASE("junit: entities, CDATA, comments and self-closing cases") {
  std::string xml = R"(<testsuite>
  <!-- produced by the harness -->
  <testcase classname="p.C&amp;o" name="lt&lt;gt&gt;"/>
  <testcase classname="p.D" name="cdata">
    <failure><![CDATA[raw <xml> payload & stuff]]></failure>
  </testcase>
</testsuite>)";
  auto rs = parse_test_report(xml);
  REQUIRE(rs.size() == 2);
  CHECK(find(rs, "p.C&o.lt<gt>") != nullptr);
  CHECK(find(rs, "p.D.cdata")->verdict == TestVerdict::Fail);
}

TEST_CASE("junit: missing classname falls back to the bare name") {
  auto rs = parse_test_report("<testsuite><testcase name=\"solo\"/></testsuite>");
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].id == "solo");
}

TEST_CASE("junit: malformed XML raises a parse error") {
  CHECK_THROWS_AS(parse_test_report("<testsuite><testcase"), JUnitParseError);
  CHECK_THROWS_AS(parse_test_report("<testsuite><testcase name=\"x\"></testsuite>"),
                  JUnitParseError);
  CHECK_THROWS_AS(parse_test_report("plain text, not xml"), JUnitParseError);
}

TEST_CASE("junit: empty suite parses to an empty result") {
  CHECK(parse_test_report("<testsuite name=\"empty\" tests=\"0\"/>").empty());
}
