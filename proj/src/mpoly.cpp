#include "pfprint/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "pfprint/error.hpp"

namespace pfprint {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == v) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::variable(VarId v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(v, exponent);
  return m;
}

int Monomial::degree() const noexcept {
  int d = 0;
  for (const auto& f : factors_) d += static_cast<int>(f.second);
  return d;
}

std::uint32_t Monomial::exponent(VarId v) const noexcept {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return it != factors_.end() && it->first == v ? it->second : 0;
}

Monomial Monomial::divided_by(VarId v) const {
  Monomial out = *this;
  auto it = std::lower_bound(out.factors_.begin(), out.factors_.end(), Factor{v, 0});
  if (it == out.factors_.end() || it->first != v)
    throw Error(ErrorCode::NotDivisible, "monomial lacks " + default_var_name(v));
  if (--it->second == 0) out.factors_.erase(it);
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first < j->first) {
      out.factors_.push_back(*i++);
    } else if (j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.factors_.insert(out.factors_.end(), i, a.factors_.end());
  out.factors_.insert(out.factors_.end(), j, b.factors_.end());
  return out;
}

MPoly::MPoly(long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Integer(constant));
}

MPoly::MPoly(const Integer& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

MPoly::MPoly(const Monomial& m, const Integer& coefficient) {
  if (coefficient != 0) terms_.emplace(m, coefficient);
}

MPoly MPoly::variable(VarId v) { return MPoly(Monomial::variable(v), Integer(1)); }

Integer MPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void MPoly::accumulate(const Monomial& m, const Integer& c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) accumulate(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) accumulate(m, Integer(-c));
  return *this;
}

MPoly operator-(const MPoly& a) {
  MPoly out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out;
  Integer prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.accumulate(ma * mb, prod);
    }
  }
  return out;
}

bool operator==(const MPoly& a, const MPoly& b) {
  // mpz_class has no defaulted equality through std::map, compare pairwise
  return a.terms_.size() == b.terms_.size() &&
         std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

MPoly div_exact_by_var(const MPoly& a, VarId v) {
  MPoly out;
  for (const auto& [m, c] : a.terms()) {
    if (m.exponent(v) == 0)
      throw Error(ErrorCode::NotDivisible,
                  default_var_name(v) + " does not divide " + to_string(MPoly(m, c)));
    out += MPoly(m.divided_by(v), c);
  }
  return out;
}

int degree(const MPoly& a) {
  int d = -1;
  for (const auto& [m, c] : a.terms()) d = std::max(d, m.degree());
  return d;
}

FieldElem reduce(const Integer& c, const PrimeField& field) {
  // mpz_fdiv_ui yields the non-negative residue
  return field.element(mpz_fdiv_ui(c.get_mpz_t(), field.modulus()));
}

FieldElem eval(const MPoly& a, std::span<const std::optional<FieldElem>> point,
               const PrimeField& field) {
  FieldElem sum = field.zero();
  for (const auto& [m, c] : a.terms()) {
    FieldElem term = reduce(c, field);
    for (const auto& [v, e] : m.factors()) {
      if (v >= point.size() || !point[v])
        throw Error(ErrorCode::MissingAssignment, "no value for " + default_var_name(v));
      term *= field.element(field.pow(point[v]->value(), e));
    }
    sum += term;
  }
  return sum;
}

std::string default_var_name(VarId v) { return "X" + std::to_string(v); }

std::string to_string(const MPoly& a, const VarNamer& name) {
  if (a.is_zero()) return "0";
  std::vector<const MPoly::TermMap::value_type*> order;
  order.reserve(a.term_count());
  for (const auto& t : a.terms()) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
    return x->first.degree() > y->first.degree();
  });

  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const auto& [m, c] = *t;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      out += mag.get_str();
      need_star = true;
    }
    for (const auto& [v, e] : m.factors()) {
      if (need_star) out += "*";
      out += name(v);
      if (e > 1) out += "^" + std::to_string(e);
      need_star = true;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarResolver& resolve) : text_(text), resolve_(resolve) {}

  MPoly parse() {
    skip();
    MPoly out;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = text_[pos_++] == '-';
      skip();
    }
    out += negative ? -term() : term();
    skip();
    while (pos_ < text_.size()) {
      char op = text_[pos_];
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      skip();
      out += op == '-' ? -term() : term();
      skip();
    }
    return out;
  }

 private:
  MPoly term() {
    MPoly out = factor();
    skip();
    while (peek() == '*') {
      ++pos_;
      skip();
      out *= factor();
      skip();
    }
    return out;
  }

  MPoly factor() {
    MPoly base;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      base = MPoly(Integer(std::string(text_.substr(start, pos_ - start))));
    } else if (is_ident_start(peek())) {
      std::size_t start = pos_;
      while (is_ident_char(peek())) ++pos_;
      base = MPoly::variable(resolve(text_.substr(start, pos_ - start)));
    } else {
      fail("expected a number or a variable");
    }
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      MPoly p(1);
      for (unsigned long i = 0; i < e; ++i) p *= base;
      base = std::move(p);
    }
    return base;
  }

  VarId resolve(std::string_view name) {
    if (resolve_) return resolve_(name);
    if (name.size() > 1 && name[0] == 'X' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return static_cast<VarId>(std::stoul(std::string(name.substr(1))));
    fail("unknown variable '" + std::string(name) + "'");
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "polynomial at position " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  const VarResolver& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_mpoly(std::string_view text, const VarResolver& resolve) {
  return PolyParser(text, resolve).parse();
}

}  // namespace pfprint
