#pragma once

// The diagonal intertwiner from singular to regular families, its Jantzen
// filtration at a rational base point, the signs of the induced Hermitian
// forms, and the recovery of the spectrum from definiteness.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hydra/poly_lambda.hpp"

namespace hydra::family {

// diagonal coefficients A_l(lambda) = prod_{n=1}^{l} (lambda n^2 + gamma^2),
// normalized so that every per-isotype constant is 1 and A_0 = 1
struct IntertwinerDiag {
  GaussRational gamma;
  int lmax;
  std::vector<PolyLambda> A;  // A[l], 0 <= l <= lmax
};

inline IntertwinerDiag build_intertwiner(const GaussRational& gamma, int lmax) {
  if (lmax < 1) throw std::invalid_argument("build_intertwiner needs lmax >= 1");
  if (!gamma.is_real() || !(gamma.re > 0))
    throw std::invalid_argument("gamma must be a positive rational");
  IntertwinerDiag d{gamma, lmax, {}};
  d.A.reserve(lmax + 1);
  d.A.push_back(PolyLambda::one());
  PolyLambda acc = PolyLambda::one();
  for (int n = 1; n <= lmax; ++n) {
    // factor: lambda n^2 + gamma^2
    PolyLambda factor({gamma * gamma, GaussRational(make_rational(n) * make_rational(n))});
    acc = acc * factor;
    d.A.push_back(acc);
  }
  return d;
}

struct JantzenLayer {
  int p = 0;
  std::vector<int> k_types;
  std::vector<int> form_signs;  // after the per-layer normalization, minimal K-type gets +1
  bool definite = false;
};

struct JantzenReport {
  GaussRational lambda0;
  std::vector<JantzenLayer> layers;
  // (p, dimension) of the definite layer; dimension -1 means infinite
  // (every K-type up to lmax participates and the layer is unbounded)
  std::optional<std::pair<int, long>> unitary_quotient;
  int lmax = 0;
};

// Layer of K-type l = vanishing order of A_l at lambda0; form sign on layer p
// at K-type l = sign of [(lambda-lambda0)^{-p} A_l](lambda0), normalized per
// layer so the lowest K-type carries +.
inline JantzenReport jantzen(const GaussRational& gamma, const GaussRational& lambda0, int lmax) {
  if (!lambda0.is_real())
    throw std::invalid_argument("jantzen base point must be real (the forms need the real structure)");
  IntertwinerDiag d = build_intertwiner(gamma, lmax);
  JantzenReport rep;
  rep.lambda0 = lambda0;
  rep.lmax = lmax;

  std::map<int, JantzenLayer> layers;
  for (int l = 0; l <= lmax; ++l) {
    int p = vanishing_order(d.A[l], lambda0);
    PolyLambda reduced = d.A[l];
    for (int k = 0; k < p; ++k) reduced = reduced.deflate(lambda0);
    GaussRational v = reduced.eval(lambda0);
    if (!v.is_real() || v.is_zero()) throw std::logic_error("reduced diagonal value must be real nonzero");
    int sign = (v.re > 0) ? 1 : -1;
    auto& layer = layers[p];
    layer.p = p;
    layer.k_types.push_back(l);
    layer.form_signs.push_back(sign);
  }
  for (auto& [p, layer] : layers) {
    // normalization freedom: one scalar per layer; spend it making the
    // minimal K-type positive
    int flip = layer.form_signs.front();
    for (int& s : layer.form_signs) s *= flip;
    layer.definite = true;
    for (int s : layer.form_signs)
      if (s != 1) layer.definite = false;
    rep.layers.push_back(layer);
  }

  // detect the distinguished definite layer
  for (const auto& layer : rep.layers) {
    if (!layer.definite) continue;
    bool bounded = layer.k_types.back() < lmax;  // did the layer stop below the cutoff?
    long dim = 0;
    for (int l : layer.k_types) dim += 2 * l + 1;
    if (rep.layers.size() == 1) {
      rep.unitary_quotient = {layer.p, -1};  // single layer spanning all K-types
    } else if (bounded) {
      rep.unitary_quotient = {layer.p, dim};
    }
  }
  return rep;
}

struct SpectrumReport {
  GaussRational gamma;
  int n_max = 0;
  std::vector<GaussRational> discrete;               // -gamma^2/n^2, n = 1..n_max
  std::vector<std::pair<long, std::vector<int>>> dims;  // (n^2, K-types 0..n-1)
  std::vector<GaussRational> continuous_verified_at;  // probes with a definite quotient
  std::vector<GaussRational> rejected_probes;         // probes with no definite quotient
  bool pass = false;
};

// deterministic rational probes strictly between consecutive eigenvalues:
// the arithmetic midpoints -gamma^2 (2n^2+2n+1) / (2 n^2 (n+1)^2)
inline GaussRational midpoint_probe(const GaussRational& gamma, int n) {
  Rational g2 = (gamma * gamma).re;
  Rational num = make_rational(2L * n * n + 2L * n + 1);
  Rational den = make_rational(2L * n * n) * make_rational((n + 1L) * (n + 1L));
  return GaussRational(-g2 * num / den);
}

inline SpectrumReport recover_spectrum(const GaussRational& gamma, int n_max,
                                       const std::vector<GaussRational>& positive_probes = {
                                           GaussRational(make_rational(1, 4)), GaussRational(1),
                                           GaussRational(3)}) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  SpectrumReport rep;
  rep.gamma = gamma;
  rep.n_max = n_max;
  rep.pass = true;
  int lmax = n_max + 2;

  for (int n = 1; n <= n_max; ++n) {
    Rational g2 = (gamma * gamma).re;
    GaussRational lam0(-g2 / (make_rational(n) * make_rational(n)));
    JantzenReport jr = jantzen(gamma, lam0, lmax);
    bool ok = jr.layers.size() == 2 && jr.unitary_quotient &&
              jr.unitary_quotient->second == long(n) * long(n);
    if (ok) {
      // K-types of the definite layer must be exactly 0..n-1
      for (const auto& layer : jr.layers)
        if (layer.definite && layer.k_types.back() != n - 1) ok = false;
    }
    rep.pass = rep.pass && ok;
    if (ok) {
      rep.discrete.push_back(lam0);
      std::vector<int> ks(n);
      for (int l = 0; l < n; ++l) ks[l] = l;
      rep.dims.push_back({long(n) * long(n), ks});
    }
  }

  for (const auto& lam : positive_probes) {
    JantzenReport jr = jantzen(gamma, lam, lmax);
    bool definite = jr.layers.size() == 1 && jr.layers.front().definite;
    rep.pass = rep.pass && definite;
    if (definite) rep.continuous_verified_at.push_back(lam);
  }

  for (int n = 1; n <= n_max; ++n) {
    GaussRational lam = midpoint_probe(gamma, n);
    JantzenReport jr = jantzen(gamma, lam, lmax);
    bool indefinite = jr.layers.size() == 1 && !jr.layers.front().definite &&
                      !jr.unitary_quotient.has_value();
    rep.pass = rep.pass && indefinite;
    if (indefinite) rep.rejected_probes.push_back(lam);
  }
  return rep;
}

struct PhysSolDescriptor {
  bool finite = false;
  long dimension = -1;        // -1 when infinite
  std::vector<int> k_types;   // explicit list when finite; otherwise 0,1,2,... (all)
};

inline PhysSolDescriptor physsol_descriptor(const GaussRational& gamma,
                                            const GaussRational& lambda0) {
  if (!lambda0.is_real()) throw std::invalid_argument("base point must be real");
  Rational g2 = (gamma * gamma).re;
  if (lambda0.re >= 0) {
    return {false, -1, {}};
  }
  // lambda0 = -gamma^2/n^2 for integer n?
  Rational ratio = -g2 / lambda0.re;  // should be n^2
  Rational n2 = ratio;
  if (n2.get_den() == 1) {
    mpz_class root = sqrt(n2.get_num());
    if (root * root == n2.get_num()) {
      long n = root.get_si();
      PhysSolDescriptor d;
      d.finite = true;
      d.dimension = n * n;
      for (int l = 0; l < n; ++l) d.k_types.push_back(l);
      return d;
    }
  }
  throw std::invalid_argument("lambda0 is not in the recovered spectrum");
}

inline nlohmann::json to_json(const SpectrumReport& rep) {
  nlohmann::json j;
  j["gamma"] = rep.gamma.str();
  j["n_max"] = rep.n_max;
  j["discrete"] = nlohmann::json::array();
  for (const auto& l : rep.discrete) j["discrete"].push_back(l.str());
  j["dimensions"] = nlohmann::json::array();
  for (const auto& [dim, ks] : rep.dims) {
    nlohmann::json e;
    e["dimension"] = dim;
    e["k_types"] = ks;
    j["dimensions"].push_back(e);
  }
  j["continuous_verified_at"] = nlohmann::json::array();
  for (const auto& l : rep.continuous_verified_at) j["continuous_verified_at"].push_back(l.str());
  j["probes"] = nlohmann::json::array();
  for (const auto& l : rep.rejected_probes) j["probes"].push_back(l.str());
  j["pass"] = rep.pass;
  return j;
}

}  // namespace hydra::family
