#include <doctest.h>

#include "nullforge/glob.hpp"
#include "nullforge/source_model.hpp"

using nullforge::glob_match;

TEST_CASE("glob: single segment wildcards") {
  CHECK(glob_match("*.java", "A.java"));
  CHECK_FALSE(glob_match("*.java", "src/A.java"));
  CHECK(glob_match("A?.java", "Ab.java"));
  CHECK_FALSE(glob_match("A?.java", "A.java"));
}

TEST_CASE("glob: double star spans directories") {
  CHECK(glob_match("**/*.java", "src/main/java/A.java"));
  CHECK(glob_match("**/*.java", "A.java"));
  CHECK(glob_match("**/src/test/**", "x/src/test/java/T.java"));
  CHECK_FALSE(glob_match("**/src/test/**", "src/main/java/A.java"));
  CHECK(glob_match("**/build/reports/*.xml", "build/reports/TEST-a.xml"));
  CHECK(glob_match("**/build/reports/*.xml", "sub/build/reports/TEST-a.xml"));
  CHECK_FALSE(glob_match("**/build/reports/*.xml", "build/reports/deep/TEST-a.xml"));
}

TEST_CASE("glob: default test exclusions") {
  const auto& globs = nullforge::default_exclude_globs();
  CHECK(nullforge::glob_match_any(globs, "src/test/java/ATest.java"));
  CHECK(nullforge::glob_match_any(globs, "module/test/T.java"));
  CHECK_FALSE(nullforge::glob_match_any(globs, "src/main/java/A.java"));
}
