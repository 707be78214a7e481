#include "nullforge/junit.hpp"

#include <cctype>
#include <map>

namespace nullforge {

namespace {

// Minimal pull parser: just enough XML for JUnit-shaped reports
// (elements, attributes, comments, CDATA, the usual entities).
struct XmlCursor {
  const std::string& xml;
  size_t pos = 0;

  explicit XmlCursor(const std::string& s) : xml(s) {}

  bool eof() const { return pos >= xml.size(); }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(xml[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw JUnitParseError(msg + " at byte " + std::to_string(pos));
  }

  void expect(char c) {
    if (eof() || xml[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string read_name() {
    size_t start = pos;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(xml[pos])) || xml[pos] == '_' ||
                      xml[pos] == '-' || xml[pos] == '.' || xml[pos] == ':'))
      ++pos;
    if (pos == start)
      fail("expected name");
    return xml.substr(start, pos - start);
  }

  static std::string decode_entities(const std::string& s) {
    static const std::map<std::string, std::string> ents = {
        {"lt", "<"}, {"gt", ">"}, {"amp", "&"}, {"quot", "\""}, {"apos", "'"}};
    std::string out;
    for (size_t i = 0; i < s.size();) {
      if (s[i] == '&') {
        size_t semi = s.find(';', i);
        if (semi != std::string::npos) {
          std::string name = s.substr(i + 1, semi - i - 1);
          auto it = ents.find(name);
          if (it != ents.end()) {
            out += it->second;
            i = semi + 1;
            continue;
          }
        }
      }
      out += s[i++];
    }
    return out;
  }
};

struct Element {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<Element> children;
};

Element parse_element(XmlCursor& c);

void skip_misc(XmlCursor& c) {
  while (true) {
    c.skip_ws();
    if (c.xml.compare(c.pos, 4, "<!--") == 0) {
      size_t end = c.xml.find("-->", c.pos);
      if (end == std::string::npos)
        c.fail("unterminated comment");
      c.pos = end + 3;
      continue;
    }
    if (c.xml.compare(c.pos, 2, "<?") == 0) {
      size_t end = c.xml.find("?>", c.pos);
      if (end == std::string::npos)
        c.fail("unterminated processing instruction");
      c.pos = end + 2;
      continue;
    }
    if (c.xml.compare(c.pos, 2, "<!") == 0) { // DOCTYPE etc.
      size_t end = c.xml.find('>', c.pos);
      if (end == std::string::npos)
        c.fail("unterminated declaration");
      c.pos = end + 1;
      continue;
    }
    break;
  }
}

void parse_content(XmlCursor& c, Element& parent) {
  while (true) {
    if (c.eof())
      c.fail("unexpected end inside <" + parent.name + ">");
    if (c.xml[c.pos] == '<') {
      if (c.xml.compare(c.pos, 2, "</") == 0) {
        c.pos += 2;
        std::string closing = c.read_name();
        if (closing != parent.name)
          c.fail("mismatched closing tag </" + closing + ">");
        c.skip_ws();
        c.expect('>');
        return;
      }
      if (c.xml.compare(c.pos, 9, "<![CDATA[") == 0) {
        size_t end = c.xml.find("]]>", c.pos);
        if (end == std::string::npos)
          c.fail("unterminated CDATA");
        c.pos = end + 3;
        continue;
      }
      if (c.xml.compare(c.pos, 4, "<!--") == 0 || c.xml.compare(c.pos, 2, "<?") == 0) {
        skip_misc(c);
        continue;
      }
      parent.children.push_back(parse_element(c));
      continue;
    }
    ++c.pos; // text content, ignored
  }
}

Element parse_element(XmlCursor& c) {
  c.expect('<');
  Element el;
  el.name = c.read_name();
  while (true) {
    c.skip_ws();
    if (c.eof())
      c.fail("unexpected end in tag <" + el.name + ">");
    if (c.xml[c.pos] == '/') {
      ++c.pos;
      c.expect('>');
      return el;
    }
    if (c.xml[c.pos] == '>') {
      ++c.pos;
      parse_content(c, el);
      return el;
    }
    std::string attr = c.read_name();
    c.skip_ws();
    c.expect('=');
    c.skip_ws();
    if (c.eof() || (c.xml[c.pos] != '"' && c.xml[c.pos] != '\''))
      c.fail("expected quoted attribute value");
    char quote = c.xml[c.pos++];
    size_t start = c.pos;
    size_t end = c.xml.find(quote, start);
    if (end == std::string::npos)
      c.fail("unterminated attribute value");
    el.attrs[attr] = XmlCursor::decode_entities(c.xml.substr(start, end - start));
    c.pos = end + 1;
  }
}

void collect_testcases(const Element& el, std::vector<TestResult>& out) {
  if (el.name == "testcase") {
    TestResult r;
    std::string classname;
    if (auto it = el.attrs.find("classname"); it != el.attrs.end())
      classname = it->second;
    std::string name;
    if (auto it = el.attrs.find("name"); it != el.attrs.end())
      name = it->second;
    r.id = classname.empty() ? name : classname + "." + name;
    r.verdict = TestVerdict::Pass;
    for (const Element& child : el.children) {
      if (child.name == "failure")
        r.verdict = TestVerdict::Fail;
      else if (child.name == "error")
        r.verdict = TestVerdict::Error;
      else if (child.name == "skipped")
        r.verdict = TestVerdict::Skipped;
    }
    out.push_back(std::move(r));
    return;
  }
  for (const Element& child : el.children)
    collect_testcases(child, out);
}

} // namespace

std::string to_string(TestVerdict verdict) {
  switch (verdict) {
  case TestVerdict::Pass: return "pass";
  case TestVerdict::Fail: return "fail";
  case TestVerdict::Error: return "error";
  case TestVerdict::Skipped: return "skipped";
  }
  return "unknown";
}

std::vector<TestResult> parse_test_report(const std::string& xml) {
  XmlCursor cursor(xml);
  skip_misc(cursor);
  if (cursor.eof())
    throw JUnitParseError("empty report");
  Element root = parse_element(cursor);
  std::vector<TestResult> results;
  collect_testcases(root, results);
  return results;
}

} // namespace nullforge
