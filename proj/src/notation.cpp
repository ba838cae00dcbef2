#include "phantom/notation.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "phantom/checked.hpp"

namespace phantom {

namespace {

class ClassParser {
 public:
  explicit ClassParser(std::string_view s) : s_(s) {}

  DivisorClass parse() {
    skip_ws();
    if (at_end()) fail("empty class");
    DivisorClass acc;
    bool first = true;
    while (!at_end()) {
      std::int64_t sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (get() == '-') ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      acc = acc + checked_mul(sign, 1) * term();
      first = false;
      skip_ws();
    }
    return acc;
  }

 private:
  DivisorClass term() {
    std::int64_t coeff = 1;
    bool had_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      had_number = true;
      skip_ws();
      if (!at_end() && peek() == '*') {
        get();
        skip_ws();
      }
    }
    if (at_end()) {
      if (had_number && coeff == 0) return DivisorClass{};
      fail("expected a symbol");
    }
    char sym = get();
    switch (sym) {
      case 'H':
        return coeff * DivisorClass::hyperplane();
      case 'K':
        return coeff * DivisorClass::canonical();
      case 'F':
        return coeff * DivisorClass::reflected_hyperplane();
      case 'E':
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          return coeff * DivisorClass::exceptional(static_cast<int>(number()));
        return coeff * DivisorClass::sum_exceptional();
      case 'D':
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("D needs an index");
        return coeff * DivisorClass::reflected_exceptional(static_cast<int>(number()));
      default:
        fail(std::string("unknown symbol '") + sym + "'");
    }
  }

  std::int64_t number() {
    std::int64_t v = 0;
    bool any = false;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = checked_add(checked_mul(v, 10), get() - '0');
      any = true;
    }
    if (!any) fail("expected a number");
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse divisor class '" + std::string(s_) + "' at position " +
                                std::to_string(pos_) + ": " + why);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

DivisorClass parse_divisor_class(std::string_view text) {
  auto first = text.find_first_not_of(" \t");
  if (first != std::string_view::npos && text[first] == '[') {
    auto j = nlohmann::json::parse(text);
    return DivisorClass::from_array(j.get<std::vector<std::int64_t>>());
  }
  return ClassParser(text).parse();
}

}  // namespace phantom
