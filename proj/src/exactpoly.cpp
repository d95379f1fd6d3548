#include "flagnest/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "flagnest/errors.hpp"

namespace flagnest {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') pos = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      seen_digit = true;
    } else if (s[i] == '/' && !seen_slash && seen_digit && i + 1 < s.size()) {
      seen_slash = true;
      seen_digit = false;
    } else {
      throw ParseError("malformed rational: " + s);
    }
  }
  if (!seen_digit) throw ParseError("malformed rational: " + s);
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational: " + s);
  if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// ---------------------------------------------------------------------------

int Degree::value() const {
  if (neg_inf_) throw PreconditionError("degree of the zero polynomial is minus infinity");
  return value_;
}

std::strong_ordering Degree::operator<=>(const Degree& other) const {
  if (neg_inf_ && other.neg_inf_) return std::strong_ordering::equal;
  if (neg_inf_) return std::strong_ordering::less;
  if (other.neg_inf_) return std::strong_ordering::greater;
  return value_ <=> other.value_;
}

std::string Degree::to_string() const { return neg_inf_ ? "-inf" : std::to_string(value_); }

// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::from_ints(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly(std::move(c));
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, int degree) {
  if (degree < 0) throw PreconditionError("negative monomial degree");
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Degree UniPoly::degree() const {
  return c_.empty() ? Degree::neg_infinity() : Degree::of(static_cast<int>(c_.size()) - 1);
}

Rational UniPoly::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(i)];
}

bool UniPoly::has_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return is_integer(q); });
}

bool UniPoly::has_nonnegative_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q >= 0; });
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  for (auto& q : c_) q *= s;
  trim();
  return *this;
}

namespace {

std::string coefficient_text(const Rational& a) {
  return is_integer(a) ? to_string(a) : "(" + to_string(a) + ")";
}

}  // namespace

std::string UniPoly::to_string(char var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    Rational a = abs(q);
    if (first) {
      if (q < 0) os << "-";
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << coefficient_text(a);
      continue;
    }
    if (a != 1) os << coefficient_text(a);
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

nlohmann::json UniPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& q : c_) arr.push_back(flagnest::to_string(q));
  return arr;
}

UniPoly UniPoly::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array");
  std::vector<Rational> c;
  for (const auto& e : j) {
    if (e.is_string()) {
      c.push_back(parse_rational(e.get<std::string>()));
    } else if (e.is_number_integer()) {
      c.emplace_back(e.get<long>());
    } else {
      throw ParseError("polynomial coefficient must be a string or integer");
    }
  }
  return UniPoly(std::move(c));
}

UniPoly UniPoly::parse(std::string_view text, char var) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty polynomial");
  if (s == "0") return UniPoly();
  UniPoly result;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ParseError("expected sign in polynomial: " + s);
    }
    Rational c(1);
    bool have_coeff = false;
    if (i < s.size() && s[i] == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) throw ParseError("unbalanced parenthesis: " + s);
      c = parse_rational(s.substr(i + 1, close - i - 1));
      i = close + 1;
      have_coeff = true;
    } else {
      std::size_t start = i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
      if (i > start) {
        c = parse_rational(s.substr(start, i - start));
        have_coeff = true;
      }
    }
    int exponent = 0;
    if (i < s.size() && s[i] == var) {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("missing exponent: " + s);
        exponent = std::stoi(s.substr(start, i - start));
      }
    } else if (!have_coeff) {
      throw ParseError("malformed polynomial term: " + s);
    }
    result += UniPoly::monomial(c * sign, exponent);
  }
  return result;
}

UniPoly poly_mul(const UniPoly& p, const UniPoly& q) { return p * q; }

UniPoly substitute_neg(const UniPoly& p) {
  std::vector<Rational> c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return UniPoly(std::move(c));
}

Rational coeff(const UniPoly& p, int degree) { return p.coefficient(degree); }

std::map<int, Rational> coeff_plus(const UniPoly& p) {
  std::map<int, Rational> out;
  const auto& c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) out.emplace(static_cast<int>(i), c[i]);
  return out;
}

std::optional<UniPoly> exact_div(const UniPoly& p, const UniPoly& q) {
  if (q.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (p.is_zero()) return UniPoly();
  int dp = p.degree().value();
  int dq = q.degree().value();
  if (dp < dq) return std::nullopt;
  std::vector<Rational> rem = p.coefficients();
  std::vector<Rational> quo(static_cast<std::size_t>(dp - dq + 1));
  const Rational& lead = q.coefficients().back();
  for (int k = dp - dq; k >= 0; --k) {
    Rational f = rem[static_cast<std::size_t>(k + dq)] / lead;
    quo[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(k + j)] -= f * q.coefficients()[static_cast<std::size_t>(j)];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return UniPoly(std::move(quo));
}

UniPoly truncate(const UniPoly& p, int max_degree) {
  if (max_degree < 0) return UniPoly();
  std::vector<Rational> c = p.coefficients();
  if (static_cast<int>(c.size()) > max_degree + 1) c.resize(static_cast<std::size_t>(max_degree) + 1);
  return UniPoly(std::move(c));
}

UniPoly series_inverse(const UniPoly& p, int max_degree) {
  Rational p0 = p.coefficient(0);
  if (p0 == 0) throw PreconditionError("series inverse needs a nonzero constant term");
  std::vector<Rational> inv(static_cast<std::size_t>(max_degree) + 1);
  inv[0] = Rational(1) / p0;
  for (int n = 1; n <= max_degree; ++n) {
    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += p.coefficient(k) * inv[static_cast<std::size_t>(n - k)];
    inv[static_cast<std::size_t>(n)] = -acc / p0;
  }
  return UniPoly(std::move(inv));
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

UniPoly cyclotomic(int d) {
  if (d < 1) throw PreconditionError("cyclotomic index must be positive");
  UniPoly num = UniPoly::monomial(Rational(1), d) - UniPoly::constant(Rational(1));
  for (int e : divisors(d)) {
    if (e == d) continue;
    auto q = exact_div(num, cyclotomic(e));
    if (!q) throw InternalInconsistency("cyclotomic division failed");
    num = *q;
  }
  return num;
}

// ---------------------------------------------------------------------------

int GeneratorTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

TablePtr make_table(const std::vector<std::pair<std::string, int>>& gens) {
  auto t = std::make_shared<GeneratorTable>();
  for (const auto& [name, deg] : gens) {
    if (deg <= 0) throw PreconditionError("generator degrees must be positive");
    if (t->index_of(name) >= 0) throw PreconditionError("duplicate generator " + name);
    t->names.push_back(name);
    t->degrees.push_back(deg);
  }
  return t;
}

GradedPoly::GradedPoly(TablePtr table) : table_(std::move(table)) {}

GradedPoly GradedPoly::constant(TablePtr table, const Rational& c) {
  GradedPoly p(table);
  p.add_term(Exponents(p.table_->size(), 0), c);
  return p;
}

GradedPoly GradedPoly::generator(TablePtr table, int index) {
  if (index < 0 || index >= static_cast<int>(table->size()))
    throw PreconditionError("generator index out of range");
  GradedPoly p(table);
  Exponents e(p.table_->size(), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, Rational(1));
  return p;
}

GradedPoly GradedPoly::generator(TablePtr table, std::string_view name) {
  int idx = table->index_of(name);
  if (idx < 0) throw PreconditionError("unknown generator " + std::string(name));
  return generator(std::move(table), idx);
}

void GradedPoly::add_term(const Exponents& e, const Rational& c) {
  if (!table_) throw PreconditionError("graded polynomial without generator table");
  if (e.size() != table_->size()) throw PreconditionError("exponent vector size mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational GradedPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int GradedPoly::weighted_degree(const Exponents& e) const {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * table_->degrees[i];
  return d;
}

bool GradedPoly::is_homogeneous() const {
  std::optional<int> d;
  for (const auto& [e, c] : terms_) {
    int w = weighted_degree(e);
    if (d && *d != w) return false;
    d = w;
  }
  return true;
}

std::optional<int> GradedPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  if (!is_homogeneous()) throw PreconditionError("polynomial is not homogeneous");
  return weighted_degree(terms_.begin()->first);
}

GradedPoly GradedPoly::homogeneous_part(int d) const {
  GradedPoly r(table_);
  for (const auto& [e, c] : terms_)
    if (weighted_degree(e) == d) r.terms_.emplace(e, c);
  return r;
}

bool GradedPoly::uses(int index) const {
  for (const auto& [e, c] : terms_)
    if (e[static_cast<std::size_t>(index)] > 0) return true;
  return false;
}

void GradedPoly::require_same_table(const GradedPoly& o) const {
  if (!table_ || !o.table_) throw PreconditionError("graded polynomial without generator table");
  if (table_ != o.table_ && !(*table_ == *o.table_))
    throw PreconditionError("incompatible generator tables");
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  if (!table_) table_ = o.table_;
  require_same_table(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  if (!table_) table_ = o.table_;
  require_same_table(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  a.require_same_table(b);
  GradedPoly r(a.table_);
  Exponents e(a.table_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

bool GradedPoly::operator==(const GradedPoly& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (!table_ || !o.table_) return false;
  if (table_ != o.table_ && !(*table_ == *o.table_)) return false;
  return terms_ == o.terms_;
}

GradedPoly GradedPoly::pow(int e) const {
  if (e < 0) throw PreconditionError("negative power");
  GradedPoly r = constant(table_, Rational(1));
  GradedPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

GradedPoly GradedPoly::substitute(int index, const GradedPoly& value) const {
  require_same_table(value);
  auto idx = static_cast<std::size_t>(index);
  GradedPoly r(table_);
  std::map<int, GradedPoly> powers;
  for (const auto& [e, c] : terms_) {
    int k = e[idx];
    Exponents rest = e;
    rest[idx] = 0;
    GradedPoly term(table_);
    term.add_term(rest, c);
    if (k == 0) {
      r += term;
      continue;
    }
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, value.pow(k)).first;
    r += term * it->second;
  }
  return r;
}

GradedPoly GradedPoly::retable(const TablePtr& target, const std::vector<int>& index_map) const {
  if (index_map.size() != table_->size()) throw PreconditionError("index map size mismatch");
  GradedPoly r(target);
  for (const auto& [e, c] : terms_) {
    Exponents f(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (index_map[i] < 0) throw PreconditionError("generator " + table_->names[i] + " has no image");
      f[static_cast<std::size_t>(index_map[i])] += e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

std::string monomial_string(const GeneratorTable& table, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += table.names[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

Exponents parse_monomial(const GeneratorTable& table, std::string_view text) {
  Exponents e(table.size(), 0);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s == "1") return e;
  if (s.empty()) throw ParseError("empty monomial");
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('*', start);
    std::string factor = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    int power = 1;
    std::size_t caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    if (caret != std::string::npos) {
      std::string pw = factor.substr(caret + 1);
      if (pw.empty() || !std::all_of(pw.begin(), pw.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("malformed exponent in monomial: " + s);
      power = std::stoi(pw);
    }
    int idx = table.index_of(name);
    if (idx < 0) throw ParseError("unknown generator in monomial: " + name);
    e[static_cast<std::size_t>(idx)] += power;
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return e;
}

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono = monomial_string(*table_, e);
    if (mono == "1") {
      os << flagnest::to_string(a);
    } else if (a == 1) {
      os << mono;
    } else {
      os << flagnest::to_string(a) << '*' << mono;
    }
  }
  return os.str();
}

nlohmann::json GradedPoly::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [e, c] : terms_) j[monomial_string(*table_, e)] = flagnest::to_string(c);
  return j;
}

GradedPoly GradedPoly::from_json(const TablePtr& table, const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("graded polynomial JSON must be an object");
  GradedPoly p(table);
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw ParseError("graded coefficient must be a rational string");
    p.add_term(parse_monomial(*table, k), parse_rational(v.get<std::string>()));
  }
  return p;
}

GradedPoly poly_mul(const GradedPoly& p, const GradedPoly& q) { return p * q; }

namespace {

void enumerate_monomials(const GeneratorTable& t, std::size_t i, int remaining, Exponents& cur,
                         std::vector<Exponents>& out) {
  if (i == t.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  int d = t.degrees[i];
  for (int k = remaining / d; k >= 0; --k) {
    cur[i] = k;
    enumerate_monomials(t, i + 1, remaining - k * d, cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Exponents> monomials_of_degree(const GeneratorTable& table, int degree) {
  std::vector<Exponents> out;
  if (degree < 0) return out;
  Exponents cur(table.size(), 0);
  enumerate_monomials(table, 0, degree, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

GradedUniPoly::GradedUniPoly(TablePtr table, std::vector<GradedPoly> coeffs)
    : table_(std::move(table)), c_(std::move(coeffs)) {
  for (auto& g : c_)
    if (!g.table()) g = GradedPoly(table_);
  trim();
}

GradedUniPoly GradedUniPoly::from_generators(TablePtr table, const std::vector<std::string>& names,
                                             int stride) {
  std::vector<GradedPoly> c(names.size() * static_cast<std::size_t>(stride) + 1, GradedPoly(table));
  c[0] = GradedPoly::constant(table, Rational(1));
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k].empty()) continue;
    c[(k + 1) * static_cast<std::size_t>(stride)] = GradedPoly::generator(table, names[k]);
  }
  return GradedUniPoly(table, std::move(c));
}

void GradedUniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Degree GradedUniPoly::degree() const {
  return c_.empty() ? Degree::neg_infinity() : Degree::of(static_cast<int>(c_.size()) - 1);
}

GradedPoly GradedUniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return GradedPoly(table_);
  return c_[static_cast<std::size_t>(i)];
}

std::vector<std::pair<int, GradedPoly>> GradedUniPoly::coeff_plus() const {
  std::vector<std::pair<int, GradedPoly>> out;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) out.emplace_back(static_cast<int>(i), c_[i]);
  return out;
}

GradedUniPoly operator*(const GradedUniPoly& a, const GradedUniPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return GradedUniPoly(a.table_);
  std::vector<GradedPoly> r(a.c_.size() + b.c_.size() - 1, GradedPoly(a.table_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return GradedUniPoly(a.table_, std::move(r));
}

GradedUniPoly operator+(const GradedUniPoly& a, const GradedUniPoly& b) {
  std::vector<GradedPoly> r(std::max(a.c_.size(), b.c_.size()), GradedPoly(a.table_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return GradedUniPoly(a.table_, std::move(r));
}

bool GradedUniPoly::operator==(const GradedUniPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

std::string GradedUniPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    if (i > 0) os << "t";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

GradedUniPoly poly_mul(const GradedUniPoly& p, const GradedUniPoly& q) { return p * q; }

GradedUniPoly substitute_neg(const GradedUniPoly& p) {
  std::vector<GradedPoly> c = p.coefficients();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return GradedUniPoly(p.table(), std::move(c));
}

GradedUniPoly scaled_by_generator(const TablePtr& table, const UniPoly& p, int generator) {
  std::vector<GradedPoly> c;
  GradedPoly g = GradedPoly::generator(table, generator);
  GradedPoly power = GradedPoly::constant(table, Rational(1));
  for (const auto& q : p.coefficients()) {
    c.push_back(power * q);
    power = power * g;
  }
  return GradedUniPoly(table, std::move(c));
}

GradedPoly elementary_symmetric(const TablePtr& table, const std::vector<int>& vars, int i,
                                int power) {
  if (i < 0 || i > static_cast<int>(vars.size())) return GradedPoly(table);
  std::vector<GradedPoly> e(static_cast<std::size_t>(i) + 1, GradedPoly(table));
  e[0] = GradedPoly::constant(table, Rational(1));
  for (int v : vars) {
    GradedPoly x = GradedPoly::generator(table, v).pow(power);
    for (int k = i; k >= 1; --k) e[static_cast<std::size_t>(k)] += e[static_cast<std::size_t>(k - 1)] * x;
  }
  return e[static_cast<std::size_t>(i)];
}

}  // namespace flagnest
