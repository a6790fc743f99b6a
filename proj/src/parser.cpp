#include "irredcert/parser.hpp"

#include <cctype>
#include <map>

namespace irredcert {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PolyZ parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty input", pos_);
    PolyZ f = peek() == '[' ? coefficient_list() : sum_of_monomials();
    skip_ws();
    if (!at_end()) fail("unexpected character");
    return f;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) throw ParseError(what + " (end of input)", pos_);
    throw ParseError(what + " '" + std::string(1, text_[pos_]) + "'", pos_);
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  // [c0, c1, ..., cd]
  PolyZ coefficient_list() {
    ++pos_;
    std::vector<Integer> coeffs;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return PolyZ();
    }
    for (;;) {
      skip_ws();
      bool negative = false;
      if (peek() == '-' || peek() == '+') {
        negative = peek() == '-';
        ++pos_;
      }
      Integer c = digits();
      coeffs.push_back(negative ? Integer(-c) : c);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        break;
      }
      fail("expected ',' or ']'");
    }
    return PolyZ(std::move(coeffs));
  }

  // poly := sign? mono (sign mono)*
  PolyZ sum_of_monomials() {
    std::map<std::size_t, Integer> terms;
    bool first = true;
    for (;;) {
      skip_ws();
      if (at_end()) break;
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [coeff, exponent] = monomial();
      terms[exponent] += negative ? Integer(-coeff) : coeff;
      first = false;
    }
    std::size_t top = terms.empty() ? 0 : terms.rbegin()->first;
    std::vector<Integer> coeffs(top + 1);
    for (auto& [e, c] : terms) coeffs[e] = c;
    return PolyZ(std::move(coeffs));
  }

  // mono := int ('*'? 'x' ('^' nat)?)? | 'x' ('^' nat)?
  std::pair<Integer, std::size_t> monomial() {
    Integer coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = digits();
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'x') variable_error();
      }
    }
    if (peek() == 'x') {
      ++pos_;
      skip_ws();
      std::size_t exponent = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        Integer e = digits();
        if (e > 1000000) throw ParseError("exponent too large", at);
        exponent = e.get_ui();
      }
      return {coeff, exponent};
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) variable_error();
    if (!have_coeff) fail("expected a term");
    return {coeff, 0};
  }

  [[noreturn]] void variable_error() const {
    if (!at_end() && std::isalpha(static_cast<unsigned char>(peek())))
      throw ParseError("unknown variable '" + std::string(1, peek()) + "' (only x is allowed)", pos_);
    fail("expected 'x'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyZ parse_poly(std::string_view text) { return Parser(text).parse(); }

std::string format_poly(const PolyZ& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int j = f.degree(); j >= 0; --j) {
    const Integer& c = f.coeffs()[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative)
      out += '-';
    else if (!out.empty())
      out += '+';
    const Integer mag = abs(c);
    if (j == 0 || mag != 1) out += mag.get_str();
    if (j >= 1) out += 'x';
    if (j >= 2) out += '^' + std::to_string(j);
  }
  return out;
}

}  // namespace irredcert
