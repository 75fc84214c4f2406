#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sphmax/setspec.hpp"

namespace sphmax::setgen {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  SetSpec parse() {
    SetSpec s = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after spec");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SpecParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a set name");
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  // key=value, ... until ')'
  std::map<std::string, double> kwargs(const std::vector<std::string>& allowed) {
    std::map<std::string, double> kv;
    expect('(');
    while (true) {
      const std::size_t at = pos_;
      std::string key = ident();
      bool ok = false;
      for (const auto& k : allowed) ok |= (k == key);
      if (!ok) {
        pos_ = at;
        fail("unknown parameter '" + key + "'");
      }
      expect('=');
      kv[key] = number();
      if (eat(')')) break;
      expect(',');
    }
    return kv;
  }

  double require_arg(const std::map<std::string, double>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) fail("missing parameter '" + key + "'");
    return it->second;
  }

  SetSpec checked(const std::function<SetSpec()>& make, std::size_t at) {
    try {
      return make();
    } catch (const SpecParseError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw SpecParseError(e.what(), at);
    }
  }

  SetSpec parse_spec() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string name = ident();
    if (name == "full") return full_ray();
    if (name == "interval") {
      auto kv = kwargs({"lo", "hi"});
      return checked([&] { return full_interval(require_arg(kv, "lo"), require_arg(kv, "hi")); },
                     at);
    }
    if (name == "lacunary") {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        auto kv = kwargs({"base"});
        return checked([&] { return lacunary(require_arg(kv, "base")); }, at);
      }
      return lacunary();
    }
    if (name == "seq") {
      auto kv = kwargs({"a"});
      return checked([&] { return sequence_set(require_arg(kv, "a")); }, at);
    }
    if (name == "cantor") {
      auto kv = kwargs({"ratio", "lo", "hi"});
      return checked(
          [&] {
            return cantor_set(require_arg(kv, "ratio"), require_arg(kv, "lo"),
                              require_arg(kv, "hi"));
          },
          at);
    }
    if (name == "points") {
      expect('(');
      std::vector<double> pts;
      while (true) {
        pts.push_back(number());
        if (eat(')')) break;
        expect(',');
      }
      return checked([&] { return explicit_points(std::move(pts)); }, at);
    }
    if (name == "pointsfile") {
      expect('(');
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
      if (pos_ == text_.size()) fail("unterminated pointsfile path");
      std::string path = text_.substr(start, pos_ - start);
      while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back())))
        path.pop_back();
      expect(')');
      return checked([&] { return points_from_file(path, at); }, at);
    }
    if (name == "union") {
      expect('(');
      std::vector<SetSpec> parts;
      while (true) {
        parts.push_back(parse_spec());
        if (eat(')')) break;
        expect(',');
      }
      return checked([&] { return union_of(std::move(parts)); }, at);
    }
    if (name == "scale") {
      expect('(');
      const double lambda = number();
      expect(',');
      SetSpec inner = parse_spec();
      expect(')');
      return checked([&] { return scaled(lambda, std::move(inner)); }, at);
    }
    if (name == "periodize") {
      expect('(');
      SetSpec inner = parse_spec();
      expect(')');
      return periodized(std::move(inner));
    }
    if (name == "window") {
      expect('(');
      const double r = number();
      expect(',');
      SetSpec inner = parse_spec();
      expect(')');
      return checked([&] { return window_restrict(std::move(inner), r); }, at);
    }
    pos_ = at;
    fail("unknown set name '" + name + "'");
  }

  SetSpec points_from_file(const std::string& path, std::size_t at) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open points file '" + path + "'", at);
    std::vector<double> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::size_t i = 0;
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size()) continue;
      char* end = nullptr;
      const double v = std::strtod(line.c_str() + i, &end);
      if (end == line.c_str() + i)
        throw SpecParseError("bad number in points file '" + path + "' line " +
                                 std::to_string(lineno),
                             at);
      pts.push_back(v);
    }
    return explicit_points(std::move(pts));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetSpec parse_set_spec(const std::string& text) { return Parser(text).parse(); }

}  // namespace sphmax::setgen
