#include "ymgap/forms4d.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace ymgap {

namespace {

// slots: 0:(1,2) 1:(1,3) 2:(1,4) 3:(2,3) 4:(2,4) 5:(3,4)
constexpr int kSlot[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};

template <typename Fn, std::size_t... I>
std::array<LieElement, TwoForm::kComponents> make_components(Fn&& fn, std::index_sequence<I...>) {
  return {fn(static_cast<int>(I))...};
}

template <typename Fn>
TwoForm map_components(const AlgebraContext& ctx, Fn&& fn) {
  return TwoForm(ctx, make_components(fn, std::make_index_sequence<TwoForm::kComponents>{}));
}

std::string duality_message(double sd, double asd, double scale) {
  std::ostringstream msg;
  msg << "form is neither self-dual nor anti-self-dual: |w - *w| = " << sd << ", |w + *w| = " << asd
      << ", |w| = " << scale;
  return msg.str();
}

}  // namespace

TwoForm::TwoForm(const AlgebraContext& ctx, std::array<LieElement, kComponents> components)
    : ctx_(ctx), components_(std::move(components)) {
  for (const auto& c : components_)
    if (!(c.ctx() == ctx_)) throw ContextMismatch("two-form components must share one so(N) context");
}

TwoForm TwoForm::zero(const AlgebraContext& ctx) {
  return map_components(ctx, [&](int) { return LieElement::zero(ctx); });
}

int TwoForm::slot(int i, int j) {
  if (i < 1 || i > 4 || j < 1 || j > 4 || i >= j) throw std::out_of_range("two-form slot needs 1 <= i < j <= 4");
  return kSlot[i - 1][j - 1];
}

LieElement TwoForm::at(int i, int j) const {
  if (i < 1 || i > 4 || j < 1 || j > 4) throw std::out_of_range("two-form index outside 1..4");
  if (i == j) return LieElement::zero(ctx_);
  if (i < j) return components_[kSlot[i - 1][j - 1]];
  return -components_[kSlot[j - 1][i - 1]];
}

TwoForm TwoForm::operator+(const TwoForm& other) const {
  return map_components(ctx_, [&](int s) { return components_[s] + other.components_[s]; });
}

TwoForm TwoForm::operator-(const TwoForm& other) const {
  return map_components(ctx_, [&](int s) { return components_[s] - other.components_[s]; });
}

TwoForm TwoForm::operator*(double s) const {
  return map_components(ctx_, [&](int k) { return components_[k] * s; });
}

TwoForm TwoForm::conjugated(const Eigen::MatrixXd& q) const {
  return map_components(ctx_, [&](int s) { return components_[s].conjugated(q); });
}

TwoForm hodge(const TwoForm& w) {
  const auto& c = w.components();
  return TwoForm(w.ctx(), {c[5], -c[4], c[3], c[2], -c[1], c[0]});
}

TwoForm sd_part(const TwoForm& w) { return 0.5 * (w + hodge(w)); }

TwoForm asd_part(const TwoForm& w) { return 0.5 * (w - hodge(w)); }

TwoForm project(const TwoForm& w, Duality duality) {
  switch (duality) {
    case Duality::SelfDual: return sd_part(w);
    case Duality::AntiSelfDual: return asd_part(w);
    case Duality::None: break;
  }
  return w;
}

double form_inner(const TwoForm& a, const TwoForm& b) {
  double sum = 0.0;
  for (int s = 0; s < TwoForm::kComponents; ++s) sum += inner(a.components()[s], b.components()[s]);
  return sum;
}

double form_norm_sq(const TwoForm& w) { return form_inner(w, w); }

double form_norm(const TwoForm& w) { return std::sqrt(std::max(0.0, form_norm_sq(w))); }

double trilinear(const TwoForm& w) {
  // Triples with a repeated index contain w_ii = 0 and contribute nothing, so
  // only the 24 ordered triples of distinct indices are summed.
  std::array<std::array<Eigen::MatrixXd, 4>, 4> m;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) m[i - 1][j - 1] = w.at(i, j).entries();
  double tr = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      for (int k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        // tr([X,Y] Z) = tr(XYZ) - tr(YXZ)
        const Eigen::MatrixXd xy = m[i][j] * m[j][k];
        tr += (xy.array() * m[k][i].transpose().array()).sum() -
              ((m[j][k] * m[i][j]).array() * m[k][i].transpose().array()).sum();
      }
    }
  return -w.ctx().c() * tr;
}

TwoForm trilinear_gradient(const TwoForm& w) {
  // d trilinear = 3 sum_{ijk} <H_ij, [w_jk, w_ki]>, which gives
  // G_ab = 6 sum_k [w_bk, w_ka].
  const auto& ctx = w.ctx();
  std::array<std::array<LieElement, 4>, 4> m{{
      {w.at(1, 1), w.at(1, 2), w.at(1, 3), w.at(1, 4)},
      {w.at(2, 1), w.at(2, 2), w.at(2, 3), w.at(2, 4)},
      {w.at(3, 1), w.at(3, 2), w.at(3, 3), w.at(3, 4)},
      {w.at(4, 1), w.at(4, 2), w.at(4, 3), w.at(4, 4)},
  }};
  constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return map_components(ctx, [&](int s) {
    const int a = kPairs[s][0];
    const int b = kPairs[s][1];
    LieElement g = LieElement::zero(ctx);
    for (int k = 0; k < 4; ++k) {
      if (k == a || k == b) continue;
      g = g + bracket(m[b][k], m[k][a]);
    }
    return 6.0 * g;
  });
}

double gamma(const AlgebraContext& ctx) {
  return ctx.n() == 3 ? 4.0 / std::sqrt(12.0 * ctx.c()) : 4.0 / std::sqrt(6.0 * ctx.c());
}

DualityViolation::DualityViolation(double sd_defect, double asd_defect, double scale)
    : std::invalid_argument(duality_message(sd_defect, asd_defect, scale)),
      sd_defect_(sd_defect),
      asd_defect_(asd_defect) {}

Duality classify_duality(const TwoForm& w, double rel_tol) {
  const TwoForm star = hodge(w);
  const double scale = form_norm(w);
  if (form_norm(w - star) <= rel_tol * scale) return Duality::SelfDual;
  if (form_norm(w + star) <= rel_tol * scale) return Duality::AntiSelfDual;
  return Duality::None;
}

double lemma3_margin(const TwoForm& w) {
  const double scale = form_norm(w);
  if (scale == 0.0) return 0.0;
  if (classify_duality(w, 1e-10) == Duality::None) {
    const TwoForm star = hodge(w);
    throw DualityViolation(form_norm(w - star), form_norm(w + star), scale);
  }
  return gamma(w.ctx()) * scale * scale * scale - std::abs(trilinear(w));
}

TwoForm random_form(const AlgebraContext& ctx, std::uint64_t seed, Duality duality) {
  std::mt19937_64 rng(seed);
  // braced initialization draws the components in slot order
  return project(map_components(ctx, [&](int) { return random_element(ctx, rng); }), duality);
}

}  // namespace ymgap
