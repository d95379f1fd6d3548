#include "flagnest/chern.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "flagnest/errors.hpp"
#include "flagnest/linalg.hpp"

namespace flagnest {

int Partition::weight() const {
  int w = 0;
  for (int p : parts) w += p;
  return w;
}

Partition Partition::conjugate() const {
  Partition c;
  if (parts.empty()) return c;
  for (int j = 1; j <= parts.front(); ++j) {
    int count = 0;
    for (int p : parts)
      if (p >= j) ++count;
    c.parts.push_back(count);
  }
  return c;
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

Partition Partition::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("partition must look like (2,1)");
  s = s.substr(1, s.size() - 2);
  Partition p;
  if (s.empty()) return p;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty() || item.size() > 6 ||
        !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("malformed partition part: '" + item + "'");
    int v = std::stoi(item);
    if (v <= 0) throw ParseError("partition parts must be positive");
    if (!p.parts.empty() && v > p.parts.back()) throw ParseError("partition parts must be weakly decreasing");
    p.parts.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return p;
}

namespace {

void partitions_of(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition{cur});
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(n - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

const std::vector<Partition>& partitions_up_to(int max_weight) {
  static std::shared_mutex mu;
  static std::map<int, std::vector<Partition>> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find(max_weight);
    if (it != cache.end()) return it->second;
  }
  std::vector<Partition> out;
  std::vector<int> cur;
  for (int w = 1; w <= max_weight; ++w) partitions_of(w, w, cur, out);
  std::unique_lock lock(mu);
  return cache.emplace(max_weight, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------

ChernVector ChernVector::make(std::vector<Rational> entries, int ambient_dim, bool integral,
                              std::vector<bool> integrality_mask) {
  if (entries.empty() || entries[0] != 1) throw PreconditionError("Chern vector must start with E_0 = 1");
  if (ambient_dim < 0) throw PreconditionError("negative ambient dimension");
  if (static_cast<int>(entries.size()) - 1 > ambient_dim)
    throw PreconditionError("Chern vector rank exceeds the ambient dimension");
  if (!integrality_mask.empty() && integrality_mask.size() != entries.size())
    throw PreconditionError("integrality mask size mismatch");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool need = integral || (!integrality_mask.empty() && integrality_mask[i]);
    if (need && !is_integer(entries[i]))
      throw PreconditionError("non-integral Chern number E_" + std::to_string(i) + " = " + flagnest::to_string(entries[i]));
  }
  return ChernVector{std::move(entries), ambient_dim, integral, std::move(integrality_mask)};
}

ChernVector ChernVector::from_ints(const std::vector<long>& entries, int ambient_dim) {
  std::vector<Rational> e;
  for (long v : entries) e.emplace_back(v);
  return make(std::move(e), ambient_dim);
}

ChernVector ChernVector::from_poly(const UniPoly& p, int ambient_dim) {
  return make(p.coefficients(), ambient_dim, p.has_integer_coefficients());
}

Rational ChernVector::E(int i) const {
  if (i < 0 || i >= static_cast<int>(entries.size())) return Rational(0);
  return entries[static_cast<std::size_t>(i)];
}

int ChernVector::top_index() const {
  for (int i = rank(); i >= 0; --i)
    if (entries[static_cast<std::size_t>(i)] != 0) return i;
  return 0;
}

UniPoly ChernVector::polynomial() const { return UniPoly(entries); }

std::string ChernVector::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ',';
    s += flagnest::to_string(entries[i]);
  }
  return s + "]@dim" + std::to_string(ambient_dim);
}

ChernVector ChernVector::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  std::size_t close = s.find("]@dim");
  if (s.empty() || s.front() != '[' || close == std::string::npos)
    throw ParseError("Chern vector must look like [1,2,2,1]@dim6");
  std::string body = s.substr(1, close - 1);
  std::string dim = s.substr(close + 5);
  if (dim.empty() || dim.size() > 6 ||
      !std::all_of(dim.begin(), dim.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("malformed ambient dimension in " + s);
  std::vector<Rational> e;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    e.push_back(parse_rational(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  bool integral = std::all_of(e.begin(), e.end(), [](const Rational& q) { return is_integer(q); });
  return make(std::move(e), std::stoi(dim), integral);
}

// ---------------------------------------------------------------------------

Rational schur_minor(const ChernVector& c, const Partition& lambda) {
  if (lambda.weight() > c.ambient_dim)
    throw PreconditionError("partition weight " + std::to_string(lambda.weight()) + " exceeds dim " +
                            std::to_string(c.ambient_dim));
  const int t = lambda.length();
  if (t == 0) return Rational(1);
  linalg::Mat<Rational> m = linalg::zeros<Rational>(static_cast<std::size_t>(t), static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) m[i][j] = c.E(lambda.parts[static_cast<std::size_t>(i)] - (i + 1) + (j + 1));
  return linalg::determinant(m);
}

namespace {

// Determinant in the dual entries F with F(t) E(-t) = 1, sized by the conjugate partition.
Rational dual_minor(const std::vector<Rational>& f, const Partition& conj) {
  const int t = conj.length();
  auto F = [&](int i) { return i < 0 || i >= static_cast<int>(f.size()) ? Rational(0) : f[static_cast<std::size_t>(i)]; };
  linalg::Mat<Rational> m = linalg::zeros<Rational>(static_cast<std::size_t>(t), static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) m[i][j] = F(conj.parts[static_cast<std::size_t>(i)] - (i + 1) + (j + 1));
  return linalg::determinant(m);
}

}  // namespace

NefCheck nef_feasible(const ChernVector& c) {
  NefCheck out;
  if (c.ambient_dim == 0) return out;
  UniPoly dual = series_inverse(substitute_neg(c.polynomial()), c.ambient_dim);
  std::vector<Rational> f = dual.coefficients();
  for (const auto& lam : partitions_up_to(c.ambient_dim)) {
    if (lam.weight() > c.ambient_dim) break;
    Rational v;
    if (lam.length() <= lam.parts.front()) {
      v = schur_minor(c, lam);
    } else {
      v = dual_minor(f, lam.conjugate());
    }
    if (v < 0) {
      out.feasible = false;
      out.witness = lam;
      out.witness_value = v;
      return out;
    }
  }
  return out;
}

std::string to_string(C1Branch b) {
  switch (b) {
    case C1Branch::AllOnes: return "all-ones";
    case C1Branch::GeqTwo: return "at-least-two";
    case C1Branch::Vacuous: return "vacuous";
  }
  return "?";
}

C1Report lemma_c1_consequences(const ChernVector& c) {
  if (!c.integral) throw PreconditionError("first-Chern consequences need integral data");
  if (!nef_feasible(c).feasible) throw PreconditionError("Chern vector is not nef-feasible");
  C1Report rep;
  rep.r = c.top_index();
  for (int j = 1; j <= rep.r; ++j)
    if (c.E(j) <= 0)
      throw InternalInconsistency("E_" + std::to_string(j) + " is not positive below the top index");
  rep.s = std::min(rep.r - 1, c.ambient_dim / 2);
  if (rep.s <= 0) {
    rep.branch = C1Branch::Vacuous;
    return rep;
  }
  bool ones = true, twos = true;
  for (int i = 1; i <= rep.s + 1; ++i) ones = ones && c.E(i) == 1;
  for (int i = 1; i <= rep.s; ++i) twos = twos && c.E(i) >= 2;
  if (ones) {
    rep.branch = C1Branch::AllOnes;
  } else if (twos) {
    rep.branch = C1Branch::GeqTwo;
  } else {
    throw InternalInconsistency("Chern vector " + c.to_string() + " violates the all-ones / at-least-two dichotomy");
  }
  return rep;
}

namespace {

std::vector<FactorPair> compute_factorizations(int k, int dim) {
  std::vector<UniPoly> factors;
  for (int d : divisors(k)) factors.push_back(d == 1 ? UniPoly::from_ints({1, -1}) : cyclotomic(d));
  const std::size_t m = factors.size();
  std::vector<FactorPair> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    UniPoly pe = UniPoly::constant(Rational(1)), rest = UniPoly::constant(Rational(1));
    for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? pe : rest) *= factors[i];
    UniPoly pf = substitute_neg(rest);
    if (!pe.has_nonnegative_coefficients() || !pf.has_nonnegative_coefficients()) continue;
    if (pe.degree().value() > dim || pf.degree().value() > dim) continue;
    if (!pe.has_integer_coefficients() || !pf.has_integer_coefficients())
      throw InternalInconsistency("cyclotomic split produced non-integral coefficients");
    if (!nef_feasible(ChernVector::from_poly(pe, dim)).feasible) continue;
    if (!nef_feasible(ChernVector::from_poly(pf, dim)).feasible) continue;
    if (!(pe * substitute_neg(pf) == UniPoly::monomial(Rational(-1), k) + UniPoly::constant(Rational(1))))
      throw InternalInconsistency("factorization does not multiply back to 1 - t^k");
    out.push_back({pe, pf});
  }
  auto key = [](const FactorPair& p) {
    std::vector<Rational> v = p.pe.coefficients();
    v.emplace_back(-1);
    v.insert(v.end(), p.pf.coefficients().begin(), p.pf.coefficients().end());
    return v;
  };
  std::sort(out.begin(), out.end(), [&](const FactorPair& a, const FactorPair& b) {
    auto ka = key(a), kb = key(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<FactorPair> factor_unit_minus_tk(int k, int ambient_dim) {
  if (k < 2 || k > ambient_dim + 1)
    throw PreconditionError("factor_unit_minus_tk needs 2 <= k <= dim + 1, got k = " + std::to_string(k) +
                            ", dim = " + std::to_string(ambient_dim));
  static std::shared_mutex mu;
  static std::map<std::pair<int, int>, std::vector<FactorPair>> memo;
  {
    std::shared_lock lock(mu);
    auto it = memo.find({k, ambient_dim});
    if (it != memo.end()) return it->second;
  }
  auto result = compute_factorizations(k, ambient_dim);
  std::unique_lock lock(mu);
  return memo.emplace(std::make_pair(k, ambient_dim), std::move(result)).first->second;
}

bool schwarzenberger_s33(const ChernVector& c) {
  if (!c.integral) throw PreconditionError("S33 needs integral Chern data");
  if (c.rank() < 3) throw PreconditionError("S33 needs rank at least 3");
  if (c.ambient_dim < 3) throw PreconditionError("S33 needs ambient dimension at least 3");
  BigInt lhs = c.E(1).get_num() * c.E(2).get_num() - c.E(3).get_num();
  return mpz_even_p(lhs.get_mpz_t()) != 0;
}

}  // namespace flagnest
