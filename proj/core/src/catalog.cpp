#include "spraywork/catalog.hpp"

#include "spraywork/errors.hpp"

namespace spraywork {

namespace {

CatalogEntry make(const std::string& name, const std::string& desc, int n,
                  std::vector<std::string> exprs) {
  CatalogEntry e;
  e.name = name;
  e.description = desc;
  e.model.n = n;
  e.model.label = name;
  for (const auto& s : exprs) e.model.coeffs.push_back(parse(s, n));
  return e;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> v;
  v.push_back(make("flat3", "vanishing coefficients: flat geodesic spray", 3,
                   {"0", "0", "0"}));
  v.push_back(make(
      "isotropic3",
      "radially symmetric drag term: isotropic nonzero Jacobi curvature", 3,
      {"-sqrt(y1*y1+y2*y2+y3*y3)*y1", "-sqrt(y1*y1+y2*y2+y3*y3)*y2",
       "-sqrt(y1*y1+y2*y2+y3*y3)*y3"}));
  v.push_back(make(
      "triangular-family",
      "separable upper-triangular family with distinct eigenvalues; the "
      "second-order span condition holds and the third-order condition "
      "vanishes, so it is projectively metrizable",
      3, {"x1*y1*y3", "x3*y2^2", "y3^2"}));
  v.push_back(make(
      "triangular-perturbed",
      "cross-variable perturbation of triangular-family breaking the "
      "eigen-distribution involutivity; regression fixture for the "
      "non-reducible path",
      3, {"x1*y1*y3 + x2*y1*y3", "x3*y2^2", "y3^2"}));
  v.push_back(make(
      "triangular-trig",
      "analytic-coefficient variant of the separable family exercising "
      "function composition in the expression layer",
      3, {"sin(x1)*y1*y3", "exp(x3)*y2^2", "y3^2"}));
  return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_get(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  throw UnknownCatalogEntry("no catalog entry named '" + name + "'");
}

}  // namespace spraywork
