#include "maxstab/fisher_info.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxstab {
namespace {

constexpr double kEuler = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;

// Below this |xi| the closed forms lose all precision (terms of order 1/xi^4);
// use their Taylor expansion about xi = 0 instead.
constexpr double kSeriesSwitch = 0.02;

// Taylor coefficients (xi^0 .. xi^8) of the entries of K(xi) about zero.
constexpr std::array<std::array<double, 9>, 6> kSeries{{
    {1.0, 0.8455686701969343, 2.647361321705759, -0.5018159758263756, 5.144208153368113, -7.268376034846931,
     16.421508315310785, -31.78898087000853, 64.10015027098021},
    {-0.42278433509846713, -2.2355209912793192, 0.5833928950734618, -5.069959142614599, 7.268109052778186,
     -16.410354269592656, 31.786128224187376, -64.09804633763952, 127.9581275682713},
    {0.4118403304264397, -0.2509079879131878, 3.7839071042725707, -6.3592950663535746, 15.361701908449469,
     -30.784164634536143, 63.08806575629266, -126.95384964327943, 255.01371541538114},
    {1.8236806608528795, -0.6649698143205481, 4.995710131861085, -7.267842070709441, 16.399200223874523,
     -31.78327557836622, 64.09594240429881, -127.95720799443247, 256.01623460522165},
    {0.33248490716027407, -3.7096580935190566, 6.359028084284829, -15.350547862731338, 30.781311988714986,
     -63.08596182295196, 126.9529300694406, -255.01322502693031, 510.99222757672044},
    {2.4236060551770287, -5.450214097860218, 14.301895501588152, -29.779348399063753, 62.0759812416051,
     -125.94865214444874, 254.01021544863897, -509.9905519533044, 1022.0002128989637},
}};

double horner(const std::array<double, 9>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Matrix3 symmetric(double mm, double ms, double mx, double ss, double sx, double xx) {
  return {{{mm, ms, mx}, {ms, ss, sx}, {mx, sx, xx}}};
}

void require_regular(double xi) {
  if (!(xi > -0.5)) {
    throw std::domain_error("Fisher information requires xi > -1/2");
  }
}

}  // namespace

double det3(const Matrix3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Matrix3 inverse3(const Matrix3& a) {
  const double d = det3(a);
  if (d == 0.0 || !std::isfinite(d)) {
    throw std::domain_error("inverse3: singular matrix");
  }
  Matrix3 inv{};
  inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
  inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
  inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
  inv[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
  inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
  inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
  inv[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
  inv[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
  inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
  return inv;
}

Matrix3 multiply3(const Matrix3& a, const Matrix3& b) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix3 transpose3(const Matrix3& a) {
  Matrix3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

double quadratic_form3(const Vector3& g, const Matrix3& a) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += g[i] * a[i][j] * g[j];
  return s;
}

InfoMatrix standard_info_K(double xi) {
  require_regular(xi);
  if (std::abs(xi) < kSeriesSwitch) {
    return {symmetric(horner(kSeries[0], xi), horner(kSeries[1], xi), horner(kSeries[2], xi),
                      horner(kSeries[3], xi), horner(kSeries[4], xi), horner(kSeries[5], xi)),
            true};
  }
  using boost::math::digamma;
  using boost::math::tgamma;
  // Prescott & Walden (1980) closed forms.
  const double g2 = tgamma(2.0 + xi);
  const double p = (1.0 + xi) * (1.0 + xi) * tgamma(1.0 + 2.0 * xi);
  const double q = g2 * (digamma(1.0 + xi) + (1.0 + xi) / xi);
  const double x2 = xi * xi;

  const double mm = p;
  const double ms = -(p - g2) / xi;
  const double mx = -(q - p / xi) / xi;
  const double ss = (1.0 - 2.0 * g2 + p) / x2;
  const double sx = -(1.0 - kEuler + (1.0 - g2) / xi - q + p / xi) / x2;
  const double c = 1.0 - kEuler + 1.0 / xi;
  const double xx = (kPi * kPi / 6.0 + c * c - 2.0 * q / xi + p / x2) / x2;
  return {symmetric(mm, ms, mx, ss, sx, xx), true};
}

InfoMatrix info_for_params(const GevParams& p) {
  InfoMatrix k = standard_info_K(p.xi);
  const std::array<double, 3> d{p.sigma, p.sigma, 1.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k.entries[i][j] /= d[i] * d[j];
  return k;
}

Matrix3 max_stability_jacobian(const GevParams& p, double m) {
  const double log_m = std::log(m);
  const double mxi = std::exp(p.xi * log_m);
  Matrix3 jac{};
  jac[0] = {1.0, stability_shift(p.xi, log_m), p.sigma * stability_shift_dxi(p.xi, log_m)};
  jac[1] = {0.0, mxi, p.sigma * mxi * log_m};
  jac[2] = {0.0, 0.0, 1.0};
  return jac;
}

InfoMatrix info_block_max(const GevParams& p, double m) {
  if (!(m >= 1.0)) throw std::domain_error("info_block_max: m must be at least 1");
  const GevParams pm = max_stability_map(p, {m});
  const InfoMatrix at_max = info_for_params(pm);
  const Matrix3 jac = max_stability_jacobian(p, m);
  return {multiply3(transpose3(jac), multiply3(at_max.entries, jac)), at_max.valid_for_xi};
}

double are_overall(double xi, double m) {
  require_regular(xi);
  if (!(m >= 1.0)) throw std::domain_error("are_overall: m must be at least 1");
  return std::pow(m, -(1.0 + 2.0 * xi / 3.0));
}

std::string target_label(const EfficiencyTarget& t) {
  struct Visitor {
    std::string operator()(TargetMu) const { return "mu"; }
    std::string operator()(TargetSigma) const { return "sigma"; }
    std::string operator()(TargetXi) const { return "xi"; }
    std::string operator()(TargetReturnLevel r) const {
      const double rounded = std::round(r.period);
      if (rounded == r.period) return "r" + std::to_string(static_cast<long long>(rounded));
      return "r" + std::to_string(r.period);
    }
  };
  return std::visit(Visitor{}, t);
}

Vector3 return_level_gradient(const GevParams& p, double period) {
  if (!(period > 1.0)) throw std::domain_error("return level period must exceed 1");
  // r_T = mu + sigma * shift(xi, -log y), y = -log(1 - 1/T)
  const double y = -std::log1p(-1.0 / period);
  const double ell = -std::log(y);
  return {1.0, stability_shift(p.xi, ell), p.sigma * stability_shift_dxi(p.xi, ell)};
}

double ci_length_ratio(const EfficiencyTarget& target, double xi, double m) {
  require_regular(xi);
  if (!(m >= 1.0)) throw std::domain_error("ci_length_ratio: m must be at least 1");
  if (m == 1.0) return 1.0;
  const GevParams p{0.0, 1.0, xi};
  Matrix3 full = info_for_params(p).entries;
  for (auto& row : full)
    for (double& v : row) v *= m;
  const Matrix3 var_full = inverse3(full);
  const Matrix3 var_max = inverse3(info_block_max(p, m).entries);

  Vector3 g{};
  if (std::holds_alternative<TargetMu>(target)) {
    g = {1.0, 0.0, 0.0};
  } else if (std::holds_alternative<TargetSigma>(target)) {
    g = {0.0, 1.0, 0.0};
  } else if (std::holds_alternative<TargetXi>(target)) {
    g = {0.0, 0.0, 1.0};
  } else {
    g = return_level_gradient(p, std::get<TargetReturnLevel>(target).period);
  }
  return std::sqrt(quadratic_form3(g, var_full) / quadratic_form3(g, var_max));
}

}  // namespace maxstab
