#include "torusfix/cdga.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "torusfix/errors.hpp"

namespace torusfix {

void add_into(GcPoly& acc, const GcPoly& p, const Rational& s) {
  if (s == 0) return;
  for (const auto& [m, c] : p) {
    auto [it, inserted] = acc.emplace(m, c * s);
    if (!inserted) {
      it->second += c * s;
      if (it->second == 0) acc.erase(it);
    }
  }
}

GcPoly scaled(const GcPoly& p, const Rational& s) {
  GcPoly out;
  add_into(out, p, s);
  return out;
}

FreeFactor::FreeFactor(std::vector<CdgaGenerator> gens, std::vector<GcPoly> d)
    : gens_(std::move(gens)), d_(std::move(d)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].degree == 0) throw InvalidInput("generator '" + gens_[i].name + "' has degree 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (gens_[i].name == gens_[j].name) throw InvalidInput("duplicate generator '" + gens_[i].name + "'");
    }
  }
  if (d_.empty()) d_.resize(gens_.size());
  if (d_.size() != gens_.size()) throw InvalidInput("differential does not match the generator list");
  for (const auto& p : d_) {
    for (const auto& [m, c] : p) {
      if (m.size() != gens_.size()) throw InvalidInput("differential term has the wrong arity");
    }
  }
}

std::optional<std::size_t> FreeFactor::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  return std::nullopt;
}

unsigned FreeFactor::degree(const GcMonomial& m) const {
  unsigned deg = 0;
  for (std::size_t i = 0; i < m.size(); ++i) deg += m[i] * gens_[i].degree;
  return deg;
}

std::optional<unsigned> FreeFactor::degree(const GcPoly& p) const {
  std::optional<unsigned> deg;
  for (const auto& [m, c] : p) {
    const unsigned dm = degree(m);
    if (deg && *deg != dm) throw InvalidInput("inhomogeneous element " + to_string(p));
    deg = dm;
  }
  return deg;
}

GcPoly FreeFactor::one() const { return GcPoly{{GcMonomial(gens_.size(), 0), Rational(1)}}; }

GcPoly FreeFactor::generator(std::size_t i) const {
  GcMonomial m(gens_.size(), 0);
  m[i] = 1;
  return GcPoly{{m, Rational(1)}};
}

GcPoly FreeFactor::multiply(const GcPoly& a, const GcPoly& b) const {
  GcPoly out;
  const std::size_t n = gens_.size();
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      bool vanishes = false;
      unsigned swaps = 0;
      unsigned odd_after = 0;  // odd generators of ma with larger index
      for (std::size_t i = n; i-- > 0;) {
        if (gens_[i].degree % 2 == 1) {
          if (ma[i] && mb[i]) {
            vanishes = true;
            break;
          }
          if (mb[i]) swaps += odd_after;
          odd_after += ma[i];
        }
      }
      if (vanishes) continue;
      GcMonomial m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
      const Rational c = (swaps % 2 ? Rational(-1) : Rational(1)) * ca * cb;
      auto [it, inserted] = out.emplace(std::move(m), c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

GcPoly FreeFactor::power(const GcPoly& a, unsigned k) const {
  GcPoly out = one();
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

GcPoly FreeFactor::d(const GcPoly& p) const {
  GcPoly out;
  const std::size_t n = gens_.size();
  for (const auto& [m, c] : p) {
    GcMonomial prefix(n, 0);
    unsigned prefix_deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned e = m[i];
      if (e == 0) continue;
      GcMonomial lower(n, 0);
      lower[i] = e - 1;
      GcMonomial suffix(m);
      for (std::size_t j = 0; j <= i; ++j) suffix[j] = 0;
      GcPoly term = multiply(GcPoly{{prefix, Rational(1)}}, GcPoly{{lower, Rational(e)}});
      term = multiply(multiply(term, d_[i]), GcPoly{{suffix, Rational(1)}});
      add_into(out, term, prefix_deg % 2 ? Rational(-c) : c);
      prefix[i] = e;
      prefix_deg += e * gens_[i].degree;
    }
  }
  return out;
}

std::vector<GcMonomial> FreeFactor::basis(unsigned k) const {
  std::vector<GcMonomial> out;
  GcMonomial cur(gens_.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i == gens_.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const unsigned g = gens_[i].degree;
    const unsigned cap = (g % 2 == 1) ? 1 : remaining / g;
    for (unsigned e = std::min(cap, remaining / g) + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, remaining - e * g);
    }
    cur[i] = 0;
  };
  rec(rec, 0, k);
  return out;
}

std::string FreeFactor::to_string(const GcPoly& p) const {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    const Rational mag = abs(c);
    if (c < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    first = false;
    std::vector<std::string> parts;
    if (mag != 1) parts.push_back(mag.get_str());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      parts.push_back(gens_[i].name + (m[i] > 1 ? "^" + std::to_string(m[i]) : ""));
    }
    if (parts.empty()) parts.push_back("1");
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

namespace {

class ExprParser {
 public:
  ExprParser(const FreeFactor& f, const std::string& text) : f_(f), s_(text) {}

  GcPoly parse() {
    GcPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(s_.substr(start, pos_ - start));
  }
  GcPoly expr() {
    GcPoly acc = term();
    while (true) {
      if (eat('+')) {
        add_into(acc, term());
      } else if (eat('-')) {
        add_into(acc, term(), Rational(-1));
      } else {
        return acc;
      }
    }
  }
  GcPoly term() {
    GcPoly acc = unary();
    while (eat('*')) acc = f_.multiply(acc, unary());
    return acc;
  }
  GcPoly unary() {
    if (eat('-')) return scaled(unary(), Rational(-1));
    if (eat('+')) return unary();
    GcPoly base = atom();
    if (eat('^')) {
      const Integer k = number();
      if (k > 1000) fail("exponent too large");
      base = f_.power(base, static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }
  GcPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      GcPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q(number());
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        const Integer den = number();
        if (den == 0) fail("zero denominator");
        q /= Rational(den);
      }
      return scaled(f_.one(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = s_.substr(start, pos_ - start);
      const auto idx = f_.index_of(name);
      if (!idx) fail("unknown generator '" + name + "'");
      return f_.generator(*idx);
    }
    fail("unexpected character");
  }

  const FreeFactor& f_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

GcPoly parse_gc(const FreeFactor& f, const std::string& text) { return ExprParser(f, text).parse(); }

CdgaElement Cdga::one() const {
  CdgaElement e;
  for (const auto& f : factors_) e.push_back(f.one());
  return e;
}

CdgaElement Cdga::multiply(const CdgaElement& a, const CdgaElement& b) const {
  CdgaElement out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = factors_[i].multiply(a[i], b[i]);
  return out;
}

CdgaElement Cdga::d(const CdgaElement& a) const {
  CdgaElement out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = factors_[i].d(a[i]);
  return out;
}

std::optional<unsigned> Cdga::degree(const CdgaElement& a) const {
  std::optional<unsigned> deg;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto di = factors_[i].degree(a[i]);
    if (!di) continue;
    if (deg && *deg != *di) throw InvalidInput("inhomogeneous element " + to_string(a));
    deg = di;
  }
  return deg;
}

std::vector<std::string> Cdga::violations() const {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < factors_.size(); ++t) {
    const FreeFactor& f = factors_[t];
    const std::string where = "factor " + std::to_string(t) + ": ";
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto& g = f.gens()[i];
      const GcPoly& dg = f.differential()[i];
      try {
        const auto deg = f.degree(dg);
        if (deg && *deg != g.degree + 1) {
          out.push_back(where + "d(" + g.name + ") has degree " + std::to_string(*deg));
        }
      } catch (const InvalidInput&) {
        out.push_back(where + "d(" + g.name + ") is inhomogeneous");
      }
      const GcPoly dd = f.d(dg);
      if (!dd.empty()) out.push_back(where + "d(d(" + g.name + ")) = " + f.to_string(dd));
    }
  }
  return out;
}

std::string Cdga::to_string(const CdgaElement& a) const {
  if (factors_.size() == 1) return factors_[0].to_string(a[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ", ";
    s += factors_[i].to_string(a[i]);
  }
  return s + ")";
}

CdgaElement parse_element(const Cdga& a, const std::string& text) {
  CdgaElement e;
  for (const auto& f : a.factors()) e.push_back(parse_gc(f, text));
  return e;
}

bool is_zero(const CdgaElement& a) {
  for (const auto& p : a) {
    if (!p.empty()) return false;
  }
  return true;
}

void add_into(CdgaElement& acc, const CdgaElement& b, const Rational& s) {
  for (std::size_t i = 0; i < acc.size(); ++i) add_into(acc[i], b[i], s);
}

const FactorCohomology::Cochains& FactorCohomology::cochains(unsigned k) const {
  auto it = cochains_.find(k);
  if (it != cochains_.end()) return it->second;
  Cochains c;
  c.basis = f_.basis(k);
  for (std::size_t i = 0; i < c.basis.size(); ++i) c.index.emplace(c.basis[i], i);
  return cochains_.emplace(k, std::move(c)).first->second;
}

SparseVec FactorCohomology::coordinates(const GcPoly& p, unsigned k) const {
  const Cochains& c = cochains(k);
  std::vector<SparseEntry> out;
  for (const auto& [m, q] : p) {
    auto it = c.index.find(m);
    if (it == c.index.end()) throw InvariantBreach("monomial outside degree " + std::to_string(k));
    out.push_back({it->second, q});
  }
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  return out;
}

GcPoly FactorCohomology::from_coordinates(const SparseVec& v, unsigned k) const {
  const Cochains& c = cochains(k);
  GcPoly p;
  for (const auto& e : v) p.emplace(c.basis[e.col], e.value);
  return p;
}

std::vector<SparseVec> FactorCohomology::differential_images(unsigned k) const {
  std::vector<SparseVec> out;
  for (const auto& m : cochains(k).basis) out.push_back(coordinates(f_.d(GcPoly{{m, Rational(1)}}), k + 1));
  return out;
}

const FactorCohomology::Level& FactorCohomology::level(unsigned k) const {
  auto it = levels_.find(k);
  if (it != levels_.end()) return it->second;
  const std::size_t dim = cochains(k).basis.size();
  Level lv;

  Echelon image(dim);
  if (k > 0) {
    for (const auto& v : differential_images(k - 1)) image.insert(v);
  }
  lv.image_rank = image.rank();

  SparseMatrix dk(cochain_dim(k + 1), dim);
  const auto cols = differential_images(k);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& e : cols[j]) dk.add(e.col, j, e.value);
  }
  const auto kernel = kernel_basis(dk);
  lv.cocycle_dim = kernel.size();
  for (std::size_t idx : complement_indices(image, kernel)) lv.reps.push_back(kernel[idx]);

  lv.solver = SpanSolver(dim);
  for (const auto& [pivot, row] : image.rows()) lv.solver.add(row);
  for (const auto& r : lv.reps) lv.solver.add(r);
  if (lv.image_rank + lv.reps.size() != lv.cocycle_dim) {
    throw InvariantBreach("coboundaries are not closed in degree " + std::to_string(k));
  }
  return levels_.emplace(k, std::move(lv)).first->second;
}

std::optional<RatVector> FactorCohomology::class_of(const GcPoly& p, unsigned k) const {
  const Level& lv = level(k);
  const auto coeffs = lv.solver.express(coordinates(p, k));
  if (!coeffs) return std::nullopt;
  RatVector out(lv.reps.size(), Rational(0));
  for (const auto& e : *coeffs) {
    if (e.col >= lv.image_rank) out[e.col - lv.image_rank] = e.value;
  }
  return out;
}

GcPoly FactorCohomology::representative(unsigned k, std::size_t i) const {
  return from_coordinates(level(k).reps.at(i), k);
}

CdgaCohomology::CdgaCohomology(const Cdga& a) : a_(a) {
  for (const auto& f : a_.factors()) parts_.emplace_back(f);
}

std::size_t CdgaCohomology::dim(unsigned k) const {
  std::size_t total = 0;
  for (const auto& p : parts_) total += p.dim(k);
  return total;
}

std::vector<std::size_t> CdgaCohomology::hilbert(unsigned max_degree) const {
  std::vector<std::size_t> out;
  for (unsigned k = 0; k <= max_degree; ++k) out.push_back(dim(k));
  return out;
}

std::optional<RatVector> CdgaCohomology::class_of(const CdgaElement& z, unsigned k) const {
  RatVector out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto c = parts_[i].class_of(z[i], k);
    if (!c) return std::nullopt;
    out.insert(out.end(), c->begin(), c->end());
  }
  return out;
}

CdgaElement CdgaCohomology::representative(unsigned k, std::size_t i) const {
  CdgaElement e = a_.zero();
  for (std::size_t t = 0; t < parts_.size(); ++t) {
    const std::size_t d = parts_[t].dim(k);
    if (i < d) {
      e[t] = parts_[t].representative(k, i);
      return e;
    }
    i -= d;
  }
  throw InvariantBreach("class index out of range");
}

bool CdgaCohomology::is_exact(const CdgaElement& z, unsigned k) const {
  const auto c = class_of(z, k);
  return c && is_zero(*c);
}

namespace {

GcPoly substitute(const GcPoly& p, const std::vector<GcPoly>& images, const FreeFactor& target) {
  GcPoly out;
  std::map<std::pair<std::size_t, unsigned>, GcPoly> powers;
  for (const auto& [m, c] : p) {
    GcPoly term = target.one();
    for (std::size_t i = 0; i < m.size() && !term.empty(); ++i) {
      if (m[i] == 0) continue;
      auto key = std::make_pair(i, m[i]);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, target.power(images[i], m[i])).first;
      term = target.multiply(term, it->second);
    }
    add_into(out, term, c);
  }
  return out;
}

}  // namespace

CdgaMorphism identity_morphism(const Cdga& a) {
  CdgaMorphism f;
  for (std::size_t t = 0; t < a.factor_count(); ++t) {
    f.routing.push_back(t);
    std::vector<GcPoly> imgs;
    for (std::size_t g = 0; g < a.factor(t).size(); ++g) imgs.push_back(a.factor(t).generator(g));
    f.images.push_back(std::move(imgs));
  }
  return f;
}

CdgaElement apply(const CdgaMorphism& f, const Cdga& tgt, const CdgaElement& x) {
  CdgaElement out(tgt.factor_count());
  for (std::size_t t = 0; t < tgt.factor_count(); ++t) {
    out[t] = substitute(x[f.routing[t]], f.images[t], tgt.factor(t));
  }
  return out;
}

CdgaMorphism compose(const CdgaMorphism& first, const CdgaMorphism& second, const Cdga& c) {
  CdgaMorphism out;
  for (std::size_t t = 0; t < c.factor_count(); ++t) {
    const std::size_t mid = second.routing[t];
    out.routing.push_back(first.routing[mid]);
    std::vector<GcPoly> imgs;
    for (const auto& p : first.images[mid]) imgs.push_back(substitute(p, second.images[t], c.factor(t)));
    out.images.push_back(std::move(imgs));
  }
  return out;
}

std::vector<std::string> morphism_violations(const CdgaMorphism& f, const Cdga& src,
                                             const Cdga& tgt) {
  std::vector<std::string> out;
  if (f.routing.size() != tgt.factor_count() || f.images.size() != tgt.factor_count()) {
    out.push_back("routing must name one source factor per target factor");
    return out;
  }
  for (std::size_t t = 0; t < tgt.factor_count(); ++t) {
    const std::size_t s = f.routing[t];
    if (s >= src.factor_count()) {
      out.push_back("target factor " + std::to_string(t) + " routed from missing factor");
      continue;
    }
    const FreeFactor& sf = src.factor(s);
    const FreeFactor& tf = tgt.factor(t);
    if (f.images[t].size() != sf.size()) {
      out.push_back("target factor " + std::to_string(t) + " lacks generator images");
      continue;
    }
    for (std::size_t g = 0; g < sf.size(); ++g) {
      const std::string& name = sf.gens()[g].name;
      try {
        const auto deg = tf.degree(f.images[t][g]);
        if (deg && *deg != sf.gens()[g].degree) {
          out.push_back("image of " + name + " has degree " + std::to_string(*deg));
          continue;
        }
      } catch (const InvalidInput&) {
        out.push_back("image of " + name + " is inhomogeneous");
        continue;
      }
      const GcPoly lhs = substitute(sf.differential()[g], f.images[t], tf);
      const GcPoly rhs = tf.d(f.images[t][g]);
      if (lhs != rhs) {
        out.push_back("map does not commute with d on " + name + " (factor " + std::to_string(t) +
                      "): f(d" + name + ") = " + tf.to_string(lhs) + ", d(f" + name +
                      ") = " + tf.to_string(rhs));
      }
    }
  }
  return out;
}

std::vector<RatVector> cohomology_map(const CdgaMorphism& f, const CdgaCohomology& src,
                                      const CdgaCohomology& tgt, unsigned k) {
  std::vector<RatVector> cols;
  for (std::size_t i = 0; i < src.dim(k); ++i) {
    const CdgaElement img = apply(f, tgt.algebra(), src.representative(k, i));
    auto c = tgt.class_of(img, k);
    if (!c) throw InvariantBreach("image of a cocycle is not closed");
    cols.push_back(std::move(*c));
  }
  return cols;
}

}  // namespace torusfix
