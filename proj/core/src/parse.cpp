#include "hsint/parse.hpp"

#include <cctype>
#include <sstream>

namespace hsint {

std::vector<std::string> variable_names(size_t nvars) {
  if (nvars == 1) return {"x"};
  if (nvars == 2) return {"x", "y"};
  std::vector<std::string> names;
  for (size_t i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

namespace {

class Scanner {
 public:
  Scanner(const std::string& text, const PrimeField& f, size_t nvars)
      : s_(text), f_(f), nvars_(nvars) {}

  size_t pos() const { return i_; }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }

  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  uint64_t parse_uint() {
    skip_ws();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      throw ParseError("expected a number", i_);
    }
    uint64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + uint64_t(s_[i_] - '0');
      if (v > (uint64_t(1) << 40)) throw ParseError("number too large", i_);
      ++i_;
    }
    return v;
  }

  // Variable or derivation symbol.  Returns the variable index; for "d"-
  // prefixed symbols sets is_dvar.
  bool try_parse_symbol(size_t& var, bool& is_dvar) {
    skip_ws();
    size_t start = i_;
    is_dvar = false;
    if (i_ >= s_.size()) return false;
    size_t j = i_;
    if (s_[j] == 'd' && j + 1 < s_.size() &&
        (s_[j + 1] == 'x' || s_[j + 1] == 'y')) {
      is_dvar = true;
      ++j;
    }
    if (j >= s_.size()) return false;
    if (s_[j] == 'y') {
      if (nvars_ < 2) throw ParseError("unknown variable 'y' in this ring", start);
      var = 1;
      i_ = j + 1;
      return true;
    }
    if (s_[j] != 'x') return false;
    ++j;
    size_t idx_start = j;
    uint64_t idx = 0;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
      idx = idx * 10 + uint64_t(s_[j] - '0');
      ++j;
    }
    if (j == idx_start) {
      var = 0;  // bare 'x'
    } else {
      if (idx == 0 || idx > nvars_)
        throw ParseError("variable index out of range", start);
      var = size_t(idx - 1);
    }
    if (var >= nvars_) throw ParseError("unknown variable in this ring", start);
    i_ = j;
    return true;
  }

  const PrimeField& field() const { return f_; }
  size_t nvars() const { return nvars_; }

 private:
  const std::string& s_;
  size_t i_ = 0;
  const PrimeField& f_;
  size_t nvars_;
};

struct ParsedTerm {
  Poly coeff;                 // monomial-with-coefficient part
  bool has_dvar = false;
  size_t dvar = 0;
};

// term := coeff? monofactor* [ '*' dvar | dvar ]  with optional '*' between
// factors.  allow_dvar enables the derivation grammar.
ParsedTerm parse_term(Scanner& sc, bool allow_dvar) {
  const PrimeField& f = sc.field();
  size_t nv = sc.nvars();
  ParsedTerm out{Poly::one(f, nv)};
  bool saw_factor = false;

  for (;;) {
    sc.skip_ws();
    char c = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t at = sc.pos();
      uint64_t v = sc.parse_uint();
      if (sc.accept('^')) throw ParseError("exponent on a constant", at);
      out.coeff = out.coeff.scaled(int64_t(v % f.p()));
      saw_factor = true;
    } else {
      size_t var = 0;
      bool is_dvar = false;
      if (!sc.try_parse_symbol(var, is_dvar)) {
        if (!saw_factor) throw ParseError("expected a term", sc.pos());
        break;
      }
      if (is_dvar) {
        if (!allow_dvar)
          throw ParseError("derivation symbol in polynomial", sc.pos());
        out.has_dvar = true;
        out.dvar = var;
        break;  // dvar terminates the term
      }
      uint32_t e = 1;
      if (sc.accept('^')) {
        size_t at = sc.pos();
        uint64_t v = sc.parse_uint();
        if (sc.accept('^')) throw ParseError("malformed exponent", at);
        if (v > 1000000) throw ParseError("exponent too large", at);
        e = uint32_t(v);
      }
      out.coeff = out.coeff * Poly::from_monomial(f, Monomial::unit(nv, var, e), 1);
      saw_factor = true;
    }
    sc.skip_ws();
    if (sc.accept('*')) continue;
    char nxt = sc.peek();
    bool more = std::isdigit(static_cast<unsigned char>(nxt)) || nxt == 'x' ||
                nxt == 'y' || nxt == 'd';
    if (!more) break;
  }
  return out;
}

}  // namespace

Poly parse_poly(const std::string& text, const PrimeField& f, size_t nvars) {
  Scanner sc(text, f, nvars);
  Poly acc = Poly::zero(f, nvars);
  bool negate = sc.accept('-');
  if (!negate) sc.accept('+');
  for (;;) {
    ParsedTerm t = parse_term(sc, /*allow_dvar=*/false);
    acc = negate ? acc - t.coeff : acc + t.coeff;
    if (sc.done()) break;
    if (sc.accept('+')) {
      negate = false;
    } else if (sc.accept('-')) {
      negate = true;
    } else {
      throw ParseError("expected '+' or '-'", sc.pos());
    }
  }
  return acc;
}

std::vector<Poly> parse_derivation(const std::string& text, const PrimeField& f,
                                   size_t nvars) {
  Scanner sc(text, f, nvars);
  std::vector<Poly> coeffs(nvars, Poly::zero(f, nvars));
  // allow the literal zero derivation
  {
    Scanner probe(text, f, nvars);
    if (probe.accept('0') && probe.done()) return coeffs;
  }
  bool negate = sc.accept('-');
  if (!negate) sc.accept('+');
  for (;;) {
    size_t at = sc.pos();
    ParsedTerm t = parse_term(sc, /*allow_dvar=*/true);
    if (!t.has_dvar)
      throw ParseError("derivation term lacks a dx/dy symbol", at);
    coeffs[t.dvar] = negate ? coeffs[t.dvar] - t.coeff : coeffs[t.dvar] + t.coeff;
    if (sc.done()) break;
    if (sc.accept('+')) {
      negate = false;
    } else if (sc.accept('-')) {
      negate = true;
    } else {
      throw ParseError("expected '+' or '-'", sc.pos());
    }
  }
  return coeffs;
}

size_t detect_nvars(const std::string& text) {
  // 'x' directly followed by digits is an indexed variable (x1, x2, ...);
  // plain exponents are written x^2.
  size_t nv = 1;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == 'y') nv = std::max<size_t>(nv, 2);
    if (c == 'x' && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      uint64_t idx = 0;
      size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        idx = idx * 10 + uint64_t(text[j] - '0');
        ++j;
      }
      if (idx >= 1 && idx <= 64) nv = std::max<size_t>(nv, size_t(idx));
      i = j - 1;
    }
  }
  return nv;
}

namespace {

std::string monomial_term_to_string(const Monomial& m, uint32_t c,
                                     const std::vector<std::string>& names) {
  std::ostringstream os;
  if (m.is_one()) {
    os << c;
    return os.str();
  }
  if (c != 1) os << c;
  for (size_t v = 0; v < m.nvars(); ++v) {
    if (m.exp(v) == 0) continue;
    os << names[v];
    if (m.exp(v) > 1) os << '^' << m.exp(v);
  }
  return os.str();
}

}  // namespace

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  auto names = variable_names(f.nvars());
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) os << " + ";
    os << monomial_term_to_string(m, c, names);
    first = false;
  }
  return os.str();
}

std::string derivation_to_string(const std::vector<Poly>& coeffs) {
  if (coeffs.empty()) return "0";
  size_t nv = coeffs[0].nvars();
  auto names = variable_names(nv);
  std::ostringstream os;
  bool first = true;
  for (size_t v = 0; v < coeffs.size(); ++v) {
    for (const auto& [m, c] : coeffs[v].terms()) {
      if (!first) os << " + ";
      if (!(m.is_one() && c == 1)) {
        os << monomial_term_to_string(m, c, names) << '*';
      }
      os << 'd' << names[v];
      first = false;
    }
  }
  if (first) return "0";
  return os.str();
}

}  // namespace hsint
