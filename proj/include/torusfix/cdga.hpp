#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torusfix/linalg.hpp"
#include "torusfix/rational.hpp"

namespace torusfix {

struct CdgaGenerator {
  std::string name;
  unsigned degree;  // at least 1
};

// Exponent per generator; odd generators appear with exponent 0 or 1.
// A monomial stands for the ordered product g_0^{e_0} g_1^{e_1} ...
using GcMonomial = std::vector<unsigned>;
using GcPoly = std::map<GcMonomial, Rational>;

void add_into(GcPoly& acc, const GcPoly& p, const Rational& s = 1);
GcPoly scaled(const GcPoly& p, const Rational& s);

// One connected factor (ΛZ, d) of a spacelike product.
class FreeFactor {
 public:
  // An empty differential means d = 0. Throws InvalidInput on degree-0 or
  // duplicate generators, or a differential of the wrong length.
  explicit FreeFactor(std::vector<CdgaGenerator> gens, std::vector<GcPoly> d = {});

  std::size_t size() const { return gens_.size(); }
  const std::vector<CdgaGenerator>& gens() const { return gens_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  const std::vector<GcPoly>& differential() const { return d_; }

  unsigned degree(const GcMonomial& m) const;
  // nullopt for zero; throws InvalidInput if p mixes degrees.
  std::optional<unsigned> degree(const GcPoly& p) const;

  GcPoly one() const;
  GcPoly generator(std::size_t i) const;
  GcPoly multiply(const GcPoly& a, const GcPoly& b) const;
  GcPoly power(const GcPoly& a, unsigned k) const;
  GcPoly d(const GcPoly& p) const;

  // Monomials of total degree k in a fixed order.
  std::vector<GcMonomial> basis(unsigned k) const;

  std::string to_string(const GcPoly& p) const;

 private:
  std::vector<CdgaGenerator> gens_;
  std::vector<GcPoly> d_;
};

// Parses + - * ^ ( ), integer and p/q literals and generator names.
GcPoly parse_gc(const FreeFactor& f, const std::string& text);

using CdgaElement = std::vector<GcPoly>;  // one component per factor

class Cdga {
 public:
  explicit Cdga(std::vector<FreeFactor> factors) : factors_(std::move(factors)) {}

  std::size_t factor_count() const { return factors_.size(); }
  const std::vector<FreeFactor>& factors() const { return factors_; }
  const FreeFactor& factor(std::size_t i) const { return factors_[i]; }

  CdgaElement zero() const { return CdgaElement(factors_.size()); }
  CdgaElement one() const;
  CdgaElement multiply(const CdgaElement& a, const CdgaElement& b) const;
  CdgaElement d(const CdgaElement& a) const;
  std::optional<unsigned> degree(const CdgaElement& a) const;

  // d raises degree by one and squares to zero on generators.
  std::vector<std::string> violations() const;

  std::string to_string(const CdgaElement& a) const;

 private:
  std::vector<FreeFactor> factors_;
};

// The same expression parsed in every factor.
CdgaElement parse_element(const Cdga& a, const std::string& text);
bool is_zero(const CdgaElement& a);
void add_into(CdgaElement& acc, const CdgaElement& b, const Rational& s = 1);

// Degreewise cohomology of one factor, computed on demand.
class FactorCohomology {
 public:
  explicit FactorCohomology(FreeFactor f) : f_(std::move(f)) {}

  const FreeFactor& factor() const { return f_; }
  std::size_t dim(unsigned k) const { return level(k).reps.size(); }
  std::size_t cochain_dim(unsigned k) const { return cochains(k).basis.size(); }
  std::size_t cocycle_dim(unsigned k) const { return level(k).cocycle_dim; }
  std::size_t coboundary_dim(unsigned k) const { return level(k).image_rank; }

  SparseVec coordinates(const GcPoly& p, unsigned k) const;
  GcPoly from_coordinates(const SparseVec& v, unsigned k) const;

  // Coordinates of the class of a degree-k cocycle; nullopt if p is not closed.
  std::optional<RatVector> class_of(const GcPoly& p, unsigned k) const;
  GcPoly representative(unsigned k, std::size_t i) const;

 private:
  struct Cochains {
    std::vector<GcMonomial> basis;
    std::map<GcMonomial, std::size_t> index;
  };
  struct Level {
    std::size_t image_rank = 0;
    std::size_t cocycle_dim = 0;
    std::vector<SparseVec> reps;
    SpanSolver solver{0};  // coboundary basis first, then reps
  };
  const Cochains& cochains(unsigned k) const;
  const Level& level(unsigned k) const;
  std::vector<SparseVec> differential_images(unsigned k) const;

  FreeFactor f_;
  mutable std::map<unsigned, Cochains> cochains_;
  mutable std::map<unsigned, Level> levels_;
};

class CdgaCohomology {
 public:
  explicit CdgaCohomology(const Cdga& a);

  const Cdga& algebra() const { return a_; }
  std::size_t dim(unsigned k) const;
  std::vector<std::size_t> hilbert(unsigned max_degree) const;
  const FactorCohomology& factor(std::size_t i) const { return parts_[i]; }

  std::optional<RatVector> class_of(const CdgaElement& z, unsigned k) const;
  CdgaElement representative(unsigned k, std::size_t i) const;
  bool is_exact(const CdgaElement& z, unsigned k) const;

 private:
  Cdga a_;
  std::vector<FactorCohomology> parts_;
};

// Target factor t receives from source factor routing[t]; images[t][g] is
// the image of generator g of that source factor, inside target factor t.
// Source factors not named in the routing map to zero.
struct CdgaMorphism {
  std::vector<std::size_t> routing;
  std::vector<std::vector<GcPoly>> images;
};

CdgaMorphism identity_morphism(const Cdga& a);
CdgaElement apply(const CdgaMorphism& f, const Cdga& tgt, const CdgaElement& x);
// second ∘ first, where second lands in c.
CdgaMorphism compose(const CdgaMorphism& first, const CdgaMorphism& second, const Cdga& c);

// Shape, degree preservation and commutation with d, on generators.
std::vector<std::string> morphism_violations(const CdgaMorphism& f, const Cdga& src,
                                             const Cdga& tgt);

// Matrix (columns = images of the source basis classes) of H^k(f).
std::vector<RatVector> cohomology_map(const CdgaMorphism& f, const CdgaCohomology& src,
                                      const CdgaCohomology& tgt, unsigned k);

}  // namespace torusfix
