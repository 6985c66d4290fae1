#ifndef SKDV_ESTIMATES_HPP
#define SKDV_ESTIMATES_HPP

#include <string>
#include <vector>

#include "skdv/spacetime.hpp"

namespace skdv {

/// Bilinear/trilinear estimate catalog. Each entry measures the ratio
/// lhs/rhs of one product estimate over random near-resonant ensembles:
///   L11  ||d_x(v1 v2)||_{Y^{s,-b'}}        <= c ||v1||_{Y^{s,b}} ||v2||_{Y^{s,b}}
///   L12  ||d_x(u1 conj u2)||_{Y^{s,-b'}}   <= c ||u1||_{X^{s,b}} ||u2||_{X^{s,b}}
///   L12b same at s = 0 with b' > 1/2
///   L13  ||u D_x v||_{L2}                  <= c ||u||_{X^{0,b}} ||v||_{Y^{0,b}}
///   EA   ||u v||_{X^{s,0}}                 <= c ||u||_{X^{s,b}} ||v||_{Y^{s,b}}
///   EB   || |u|^2 u ||_{X^{s,0}}           <= c ||u||_{X^{s,b}}^3
///   EC   ||(D_x^{1/2} u1) u2||_{L2}        <= c ||u1||_{X^{0,b}} ||u2||_{X^{0,b}}
///   ED   ||D_x^{1/2}(u1 conj u2)||_{L2}    <= c ||u1||_{X^{0,b}} ||u2||_{X^{0,b}}
///   EE   ||v1 v2||_{L2}                    <= c ||v1||_{Y^{-1/2,1/2-}} ||v2||_{Y^{1/4,1/2+}}
///   EF   ||d_x(v1 v2)||_{X^{0,-1/2+}}      <= c ||v1||_{Y^{g1,1/2+}} ||v2||_{Y^{g2,1/2+}}
///   EG   ||D_x^{1/2} Iminus^{1/2}(v1,v2)||_{L2} <= c ||v1||_{Y^{0,b}} ||v2||_{Y^{0,b}}
///   EH   ||Iminus^{1/2}(u1,u2)||_{L2}      <= c ||u1||_{X^{0,b}} ||u2||_{X^{0,b}}
enum class CatalogId { L11, L12, L12b, L13, EA, EB, EC, ED, EE, EF, EG, EH };

std::string to_string(CatalogId id);
CatalogId catalog_id_from_string(const std::string& s);

struct EstimateParams {
  double s = 0.5;      // spatial regularity for entries carrying an s
  double b = -1.0;     // negative -> default 1/2 + epsilon
  double bprime = -1.0; // negative -> entry default derived from its gate
  double epsilon = 0.01;
  double gamma1 = -0.3, gamma2 = -0.3; // EF regularities
  double beta_sep = 2.0;               // EC separation factor, must be > 1
  bool conj1 = false, conj2 = false;   // extra conjugation toggles on the lhs
  double concentration = 1.0;          // ensemble modulation concentration
};

struct EstimateReport {
  std::string id;
  int samples = 0;
  std::uint64_t seed = 0;
  double epsilon = 0;
  double s = 0, b = 0, bprime = 0;
  bool conj1 = false, conj2 = false;
  std::vector<std::string> notes;
  struct Resolution {
    int n = 0, n_t = 0;
    double max_ratio = 0, mean_ratio = 0;
    std::vector<double> ratios;
  };
  std::vector<Resolution> resolutions;
};

/// Gate check for an entry; throws ConfigError quoting the violated
/// hypothesis. Returns the resolved (b, b') actually used.
std::pair<double, double> check_gates(CatalogId id, const EstimateParams& p);

/// Ensemble band specifications for the entry's inputs at resolution n
/// (box 2*pi x 2*pi, so modes are integer frequencies).
std::vector<EnsembleSpec> entry_ensembles(CatalogId id, const EstimateParams& p, int n);

/// lhs and rhs of one entry evaluated on explicit input fields.
struct SamplePair {
  double lhs = 0, rhs = 0;
};
SamplePair evaluate_estimate(CatalogId id, const EstimateParams& p,
                             const std::vector<SpaceTimeField>& inputs);

/// Run the ratio measurement across resolutions (n_t matched to n).
EstimateReport measure_estimate(CatalogId id, const EstimateParams& p, int samples,
                                const std::vector<int>& resolutions, std::uint64_t seed);

} // namespace skdv

#endif
