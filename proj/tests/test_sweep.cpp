#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "ptlgi/lgi.hpp"
#include "ptlgi/params.hpp"
#include "ptlgi/sweep.hpp"

using namespace ptlgi;

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

PtParams<double> pr(double ratio) { return params_from_ratio(ratio); }

bool near_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// near the exceptional point the tau landscape develops several extrema of
// equal height to machine precision, so the extremizer may legitimately
// return any of them; rows with pin=false freeze only the extremal values
// and check that the reported location attains them
struct FrozenBound {
  double ratio, sup, argmax, inf, argmin;
  bool capped;
  bool pin_argmax = true;
  bool pin_argmin = true;
};

}  // namespace

TEST_CASE("evaluator matches the direct correlator sum") {
  const auto obs = sigma_y_observable<double>();
  for (const int order : {3, 4}) {
    for (const double g : {0.0, 0.472, 0.9}) {
      const PtParams<double> p = pr(g);
      const KnEvaluator<double> ev(p, order, obs);
      CHECK(ev.order() == order);
      CHECK(ev.params().gamma == p.gamma);
      for (const double tau : {0.3, 0.9, 2.0}) {
        const LgiValue<double> direct = k_n(p, make_schedule<double>(order, tau));
        CHECK(ev.at(tau, obs.plus) == doctest::Approx(direct.value).epsilon(1e-12));
      }
    }
  }
  const KnEvaluator<double> ev5(pr(0.5), 5, obs);
  const auto cache = ev5.prepare(0.7);
  CHECK(cache.tau == 0.7);
  CHECK(cache.first_leg.size() == 3);  // U(tau), U(2 tau), U(3 tau)
  CHECK(ev5.at(0.7, obs.plus) ==
        doctest::Approx(k_n(pr(0.5), make_schedule<double>(5, 0.7)).value).epsilon(1e-12));
}

TEST_CASE("evaluator validation") {
  const auto obs = sigma_y_observable<double>();
  CHECK_THROWS_AS(KnEvaluator<double>(pr(0.5), 2, obs), std::invalid_argument);
  const KnEvaluator<double> ev(pr(0.5), 3, obs);
  CHECK_THROWS_AS(ev.prepare(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ev.prepare(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ev.prepare(std::numeric_limits<double>::infinity()), std::invalid_argument);
  const auto cache = ev.prepare(0.5);
  CHECK_THROWS_AS(ev.eval(cache, (2.0 * obs.plus).eval()), std::invalid_argument);
}

TEST_CASE("parabolic refinement on an exact parabola") {
  const auto f = [](double t) { return 2.0 - (t - 1.234) * (t - 1.234); };
  std::vector<double> ts(21), vs(21);
  for (int i = 0; i < 21; ++i) {
    ts[static_cast<std::size_t>(i)] = 0.1 * i;
    vs[static_cast<std::size_t>(i)] = f(ts[static_cast<std::size_t>(i)]);
  }
  std::size_t imax = 0;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i] > vs[imax]) imax = i;
  }
  const auto [t_star, v_star] = detail::refine_extremum(f, ts, vs, imax, +1);
  CHECK(near_abs(t_star, 1.234, 1e-6));
  CHECK(v_star == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(v_star >= vs[imax]);

  // minimization of the mirrored parabola
  std::vector<double> nv(21);
  for (std::size_t i = 0; i < 21; ++i) nv[i] = -vs[i];
  const auto [t_min, v_min] =
      detail::refine_extremum([&](double t) { return -f(t); }, ts, nv, imax, -1);
  CHECK(near_abs(t_min, 1.234, 1e-6));
  CHECK(v_min == doctest::Approx(-2.0).epsilon(1e-12));

  // a boundary index is returned unrefined
  const auto [t_edge, v_edge] = detail::refine_extremum(f, ts, vs, 0, +1);
  CHECK(t_edge == ts[0]);
  CHECK(v_edge == vs[0]);
}

TEST_CASE("extremal bounds reproduce the frozen scan, order 3") {
  const std::vector<FrozenBound> frozen = {
      {0.0, 1.4999999999999998, 0.5235987757498627, -3.0, 1.5707963267948997, false},
      {0.3, 1.6677948577269484, 2.6196778181282347, -3.0, 1.646641970957577, false},
      {0.472, 1.8482758455528796, 2.7680948556961553, -3.0, 1.781759203808368, false},
      {0.6, 2.040620420919227, 3.007715446162267, -3.0, 1.9634954084936207, false},
      {0.9, 2.7119744753953725, 1.7935980717859294, -3.0, 3.603653919563209, false},
      {0.942, 2.8297721673490255, 7.0242433261959025, -3.0, 4.680381641359285, false, false,
       true},
      {0.999, 2.9970010022473716, 17.566420599193137, -3.0, 35.13285797058145, true},
  };
  std::vector<double> ratios;
  for (const auto& fb : frozen) ratios.push_back(fb.ratio);
  const BoundCurve<double> curve = extremal_bounds(make_params(1.0, 0.0), ratios, 3);
  CHECK(curve.order == 3);
  REQUIRE(curve.records.size() == frozen.size());
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    const auto& r = curve.records[i];
    const auto& fb = frozen[i];
    CAPTURE(fb.ratio);
    CHECK(r.gamma_ratio == fb.ratio);
    CHECK(r.sup == doctest::Approx(fb.sup).epsilon(1e-9));
    if (fb.pin_argmax) CHECK(near_abs(r.argmax_j_tau, fb.argmax, 1e-4));
    CHECK(near_abs(r.inf, -3.0, 1e-9));
    CHECK(r.inf >= -3.0 - 1e-9);
    if (fb.pin_argmin) CHECK(near_abs(r.argmin_j_tau, fb.argmin, 1e-4));
    CHECK(r.domain_capped == fb.capped);
    // the reported locations really attain the reported extrema
    const PtParams<double> p = pr(fb.ratio);
    CHECK(k_n(p, make_schedule<double>(3, r.argmax_j_tau)).value ==
          doctest::Approx(r.sup).epsilon(1e-9));
    CHECK(k_n(p, make_schedule<double>(3, r.argmin_j_tau)).value ==
          doctest::Approx(r.inf).epsilon(1e-9));
  }
  // supremum grows monotonically toward the exceptional point
  for (std::size_t i = 0; i + 1 < curve.records.size(); ++i) {
    CHECK(curve.records[i + 1].sup >= curve.records[i].sup - 1e-12);
  }
}

TEST_CASE("extremal bounds reproduce the frozen scan, order 4") {
  const std::vector<FrozenBound> frozen = {
      {0.0, 2.8284271247461894, 0.3926990792975568, -2.82842712474619, 1.1780972470417639,
       false},
      {0.3, 2.9413785127578014, 2.8263267051180314, -2.806912416009658, 1.3134714745107017,
       false},
      {0.6, 3.128349348980896, 3.3159317587795405, -2.693358942229229, 2.2186443107930054,
       false},
      {0.708, 3.250690120135258, 0.7108024937441659, -2.660550057286775, 2.457385730543984,
       false},
      {0.857, 3.5262577280848104, 5.093658076070382, -2.6231310562820553, 3.2564932299835463,
       false, false, true},
      {0.9, 3.641295163477528, 6.014561116552263, -2.613715492280386, 3.805723339205355, false,
       false, false},
      {0.915, 3.686388543487147, 1.2909395624105031, -2.610555838373387, 4.093364471786409,
       false, false, false},
      {0.999, 3.9956747729429947, 11.710942161527036, -2.5939376130270944, 35.32196262208895,
       true},
  };
  std::vector<double> ratios;
  for (const auto& fb : frozen) ratios.push_back(fb.ratio);
  const BoundCurve<double> curve = extremal_bounds(make_params(1.0, 0.0), ratios, 4);
  CHECK(curve.order == 4);
  REQUIRE(curve.records.size() == frozen.size());
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    const auto& r = curve.records[i];
    const auto& fb = frozen[i];
    CAPTURE(fb.ratio);
    CHECK(r.gamma_ratio == fb.ratio);
    CHECK(r.sup == doctest::Approx(fb.sup).epsilon(1e-9));
    if (fb.pin_argmax) CHECK(near_abs(r.argmax_j_tau, fb.argmax, 1e-4));
    CHECK(r.inf == doctest::Approx(fb.inf).epsilon(1e-9));
    if (fb.pin_argmin) CHECK(near_abs(r.argmin_j_tau, fb.argmin, 1e-4));
    CHECK(r.domain_capped == fb.capped);
    const PtParams<double> p = pr(fb.ratio);
    CHECK(k_n(p, make_schedule<double>(4, r.argmax_j_tau)).value ==
          doctest::Approx(r.sup).epsilon(1e-9));
    CHECK(k_n(p, make_schedule<double>(4, r.argmin_j_tau)).value ==
          doctest::Approx(r.inf).epsilon(1e-9));
  }
  // the K4 infimum rises (never deepens) with the damping ratio
  for (std::size_t i = 0; i + 1 < curve.records.size(); ++i) {
    CHECK(curve.records[i + 1].inf >= curve.records[i].inf - 1e-12);
  }
}

TEST_CASE("extremal bounds are dimensionless in the physical units") {
  const BoundCurve<double> unit = extremal_bounds(make_params(1.0, 0.0), {0.472}, 3);
  const BoundCurve<double> khz = extremal_bounds(make_params(10.4, 0.0), {0.472}, 3);
  CHECK(khz.records[0].sup == doctest::Approx(unit.records[0].sup).epsilon(1e-12));
  CHECK(near_abs(khz.records[0].argmax_j_tau, unit.records[0].argmax_j_tau, 1e-6));
  CHECK(near_abs(khz.records[0].argmin_j_tau, unit.records[0].argmin_j_tau, 1e-6));
}

TEST_CASE("extremal bounds validation") {
  const PtParams<double> base = make_params(1.0, 0.0);
  CHECK_THROWS_AS(extremal_bounds(base, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(extremal_bounds(base, {0.5}, 3, sigma_y_observable<double>().plus,
                                  sigma_y_observable<double>(), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(extremal_bounds(base, {1.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(extremal_bounds(base, {-0.1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(extremal_bounds(base, {0.9995}, 3), std::invalid_argument);
}

TEST_CASE("k surface samples the evaluator on the requested axes") {
  const PtParams<double> base = make_params(1.0, 0.0);
  const std::vector<double> ratios = {0.0, 0.942};
  const std::vector<double> j_taus = {0.5, 1.0, 2.0};
  const SweepGrid<double> grid = k_surface(base, ratios, j_taus, 3);
  CHECK(grid.order == 3);
  CHECK(grid.values.rows() == 2);
  CHECK(grid.values.cols() == 3);
  CHECK(grid.gamma_ratios == ratios);
  CHECK(grid.j_taus == j_taus);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    for (std::size_t j = 0; j < j_taus.size(); ++j) {
      const double direct = k_n(pr(ratios[i]), make_schedule<double>(3, j_taus[j])).value;
      CHECK(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
  for (std::size_t j = 0; j < j_taus.size(); ++j) {
    CHECK(grid.values(0, static_cast<Eigen::Index>(j)) ==
          doctest::Approx(k3_hermitian_closed(j_taus[j])).epsilon(1e-10));
  }

  CHECK_THROWS_AS(k_surface(base, {}, j_taus, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_surface(base, ratios, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_surface(base, {0.0, 1.0}, j_taus, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_surface(base, {0.5, 0.3}, j_taus, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_surface(base, ratios, {0.0, 1.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_surface(base, ratios, {1.0, 0.5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_surface(base, ratios, j_taus, 2), std::invalid_argument);
}

TEST_CASE("bound table") {
  const BoundTable<double> table = bound_table(make_params(1.0, 0.0));
  CHECK(table.classical.k3_min == -3.0);
  CHECK(table.classical.k3_max == 1.0);
  CHECK(table.classical.k4_min == -2.0);
  CHECK(table.classical.k4_max == 2.0);
  CHECK(table.claimed_limit.k3_min == -3.0);
  CHECK(table.claimed_limit.k3_max == 3.0);
  CHECK(table.claimed_limit.k4_min == -4.0);
  CHECK(table.claimed_limit.k4_max == 4.0);
  CHECK(table.near_ep_ratio == doctest::Approx(0.999).epsilon(1e-12));

  const double r2 = 2.0 * std::sqrt(2.0);
  CHECK(near_abs(table.hermitian.k3_max, 1.5, 1e-5));
  CHECK(near_abs(table.hermitian.k3_min, -3.0, 1e-5));
  CHECK(near_abs(table.hermitian.k4_max, r2, 1e-5));
  CHECK(near_abs(table.hermitian.k4_min, -r2, 1e-5));

  CHECK(table.near_ep.k3_max >= 2.5);
  CHECK(near_abs(table.near_ep.k3_min, -3.0, 1e-5));
  CHECK(table.near_ep.k4_max >= 3.2);
  CHECK(table.near_ep.k4_min > -2.7);
  CHECK(table.near_ep.k4_min < -2.5);
  CHECK(!table.caveat.empty());
}

TEST_CASE("target states on the bloch sphere") {
  const auto obs = sigma_y_observable<double>();
  const QubitState<double> equator = target_state(TargetStateParams<double>{kPi / 2.0, kPi});
  CHECK((equator - obs.plus).norm() <= 1e-15);
  CHECK(std::abs(equator.norm() - 1.0) <= 1e-15);

  const QubitState<double> pole = target_state(TargetStateParams<double>{0.0, 0.0});
  CHECK(pole(0) == Complex<double>(0, 0));
  CHECK(pole(1) == Complex<double>(1, 0));

  const QubitState<double> anti = target_state(TargetStateParams<double>{kPi, 0.0});
  CHECK(std::abs(anti(0) - Complex<double>(0, -1)) <= 1e-15);
  CHECK(std::abs(anti(1)) <= 1e-15);

  CHECK_THROWS_AS(target_state(TargetStateParams<double>{-0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(target_state(TargetStateParams<double>{kPi + 0.1, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(target_state(TargetStateParams<double>{0.5, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(target_state(TargetStateParams<double>{0.5, 2.0 * kPi}),
                  std::invalid_argument);
  CHECK_THROWS_AS(target_state(TargetStateParams<double>{std::nan(""), 0.0}),
                  std::invalid_argument);
}

TEST_CASE("phi wrapping") {
  CHECK(detail::wrap_phi(0.5) == 0.5);
  CHECK(detail::wrap_phi(0.0) == 0.0);
  CHECK(detail::wrap_phi(2.0 * kPi) == 0.0);
  CHECK(detail::wrap_phi(-2.0 * kPi) == 0.0);
  CHECK(detail::wrap_phi(-0.1) == doctest::Approx(2.0 * kPi - 0.1).epsilon(1e-12));
  CHECK(detail::wrap_phi(2.0 * kPi + 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(detail::wrap_phi(5.0 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("objective evaluation at fixed tau") {
  const TargetStateParams<double> axis{kPi / 2.0, kPi};
  const ObjectiveSample<double> s = evaluate_objective(
      pr(0.472), 3, Objective::maximize, axis, TauStrategy::fixed, 0.8);
  CHECK(s.value == doctest::Approx(1.8479730309304345).epsilon(1e-9));
  CHECK(s.j_tau == 0.8);

  CHECK_THROWS_AS(
      evaluate_objective(pr(0.472), 3, Objective::maximize, axis, TauStrategy::fixed, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      evaluate_objective(make_params(1.0, 1.5), 3, Objective::maximize, axis),
      std::domain_error);
  CHECK_THROWS_AS(evaluate_objective(make_params(1.0, 1.0), 3, Objective::maximize, axis),
                  std::domain_error);
  CHECK_THROWS_AS(evaluate_objective(pr(0.5), 3, Objective::maximize, axis,
                                     TauStrategy::extremize, 0.0, sigma_y_observable<double>(),
                                     2),
                  std::invalid_argument);
}

TEST_CASE("objective evaluation with tau extremization matches the bounds scan") {
  const PtParams<double> p = pr(0.472);
  const ObjectiveSample<double> s = evaluate_objective(
      p, 3, Objective::maximize, TargetStateParams<double>{kPi / 2.0, kPi});
  const BoundCurve<double> curve = extremal_bounds(make_params(1.0, 0.0), {0.472}, 3);
  CHECK(s.value == doctest::Approx(curve.records[0].sup).epsilon(1e-12));
  CHECK(near_abs(s.j_tau, curve.records[0].argmax_j_tau, 1e-6));
  CHECK(s.value == doctest::Approx(1.8482758455528796).epsilon(1e-9));
}

TEST_CASE("the optimum near the exceptional point lies off the equator") {
  const PtParams<double> p = pr(0.99);
  const ObjectiveSample<double> axis = evaluate_objective(
      p, 3, Objective::maximize, TargetStateParams<double>{kPi / 2.0, kPi});
  // the tau maximum here is twofold near-degenerate (two peaks equal to
  // ~1e-15), so only the value is pinned, not the attaining tau
  CHECK(axis.value == doctest::Approx(2.970102223524367).epsilon(1e-5));
  CHECK(axis.j_tau > 0.0);

  const ObjectiveSample<double> tilted = evaluate_objective(
      p, 3, Objective::maximize, TargetStateParams<double>{1.512016, kPi});
  CHECK(tilted.value == doctest::Approx(2.9765899717002418).epsilon(1e-9));
  CHECK(tilted.value > axis.value + 1e-3);
}

TEST_CASE("grid search over prepared states") {
  const PtParams<double> p = pr(0.9);
  const auto obs = sigma_y_observable<double>();
  const OptimizationResult<double> res = optimize_target_state(
      p, 3, Objective::maximize, 41, TauStrategy::extremize, 0.0, obs, 400);

  CHECK(res.order == 3);
  CHECK(res.objective == Objective::maximize);
  CHECK(res.tau_strategy == TauStrategy::extremize);
  REQUIRE(res.thetas.size() == 41);
  REQUIRE(res.phis.size() == 41);
  CHECK(res.values.rows() == 41);
  CHECK(res.values.cols() == 41);
  CHECK(res.thetas[0] == 0.0);
  CHECK(res.phis[0] == 0.0);
  CHECK(res.thetas[20] == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(res.thetas[40] == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(res.phis[40] == doctest::Approx(2.0 * kPi * 40.0 / 41.0).epsilon(1e-15));

  // the optimum sits off the equator, on the phi = pi meridian; on that
  // meridian the landscape is symmetric under theta -> pi - theta, with two
  // exactly degenerate maxima, so fold the winner onto the lower branch
  const double folded = std::min(res.best.theta, kPi - res.best.theta);
  CHECK(near_abs(folded, 1.382300767579509, 1e-9));
  CHECK(near_abs(res.best.phi, kPi, 1e-12));
  CHECK(res.best_value == doctest::Approx(2.768971587753727).epsilon(1e-9));
  CHECK(res.best_j_tau > 0.0);
  const ObjectiveSample<double> mirror =
      evaluate_objective(p, 3, Objective::maximize, {kPi - res.best.theta, res.best.phi},
                         TauStrategy::extremize, 0.0, obs, 400);
  CHECK(mirror.value == doctest::Approx(res.best_value).epsilon(1e-9));

  // refinement only improves on the coarse grid
  CHECK(res.best_value + 1e-12 >= res.values.maxCoeff());
  CHECK(res.values.maxCoeff() == doctest::Approx(2.764154495815945).epsilon(1e-9));
  // it beats the equatorial state
  CHECK(res.best_value >= 2.7119744753953725 - 1e-6);

  // a theta = 0 state ignores phi, so the first row is constant
  CHECK(res.values.row(0).maxCoeff() - res.values.row(0).minCoeff() <= 1e-15);

  // the reported optimum reproduces through the standalone evaluation
  const ObjectiveSample<double> replay = evaluate_objective(
      p, 3, Objective::maximize, res.best, TauStrategy::extremize, 0.0, obs, 400);
  CHECK(res.best_value == replay.value);
  CHECK(res.best_j_tau == replay.j_tau);
}

TEST_CASE("grid search determinism") {
  const PtParams<double> p = pr(0.9);
  const auto obs = sigma_y_observable<double>();
  const auto a = optimize_target_state(p, 3, Objective::maximize, 41, TauStrategy::extremize,
                                       0.0, obs, 400);
  const auto b = optimize_target_state(p, 3, Objective::maximize, 41, TauStrategy::extremize,
                                       0.0, obs, 400);
  CHECK(a.best.theta == b.best.theta);
  CHECK(a.best.phi == b.best.phi);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_j_tau == b.best_j_tau);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grid search finds the classical floor when minimizing") {
  const PtParams<double> p = pr(0.9);
  const auto obs = sigma_y_observable<double>();
  const OptimizationResult<double> res = optimize_target_state(
      p, 3, Objective::minimize, 41, TauStrategy::extremize, 0.0, obs, 400);
  CHECK(res.objective == Objective::minimize);
  CHECK(res.best_value <= -3.0 + 1e-5);
  CHECK(res.best_value >= -3.0 - 1e-9);
  CHECK(res.values.minCoeff() <= -3.0 + 1e-5);
  CHECK(res.values.minCoeff() >= -3.0 - 1e-9);
  const ObjectiveSample<double> replay = evaluate_objective(
      p, 3, Objective::minimize, res.best, TauStrategy::extremize, 0.0, obs, 400);
  CHECK(res.best_value == replay.value);
}

TEST_CASE("grid search at fixed tau") {
  const PtParams<double> p = pr(0.472);
  const auto obs = sigma_y_observable<double>();
  const OptimizationResult<double> res = optimize_target_state(
      p, 3, Objective::maximize, 41, TauStrategy::fixed, 0.8, obs, 400);
  CHECK(res.tau_strategy == TauStrategy::fixed);
  CHECK(res.best_j_tau == 0.8);
  CHECK(near_abs(res.best.theta, 2.034181243199391, 1e-12));
  CHECK(near_abs(res.best.phi, kPi, 1e-12));
  CHECK(res.best_value == doctest::Approx(1.9589082496304728).epsilon(1e-9));
  CHECK(res.values.maxCoeff() == doctest::Approx(1.9573496781954065).epsilon(1e-9));
  // the off-equator optimum beats the equatorial state at the same tau
  CHECK(res.best_value > 1.8479730309304345 + 0.1);
  const ObjectiveSample<double> replay = evaluate_objective(
      p, 3, Objective::maximize, res.best, TauStrategy::fixed, 0.8, obs, 400);
  CHECK(res.best_value == replay.value);
  CHECK(replay.j_tau == 0.8);
}

TEST_CASE("optimizer validation") {
  const auto obs = sigma_y_observable<double>();
  CHECK_THROWS_AS(optimize_target_state(pr(0.5), 3, Objective::maximize, 40),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_target_state(make_params(1.0, 1.0), 3, Objective::maximize, 41),
                  std::domain_error);
  CHECK_THROWS_AS(optimize_target_state(pr(0.5), 3, Objective::maximize, 41,
                                        TauStrategy::fixed, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_target_state(pr(0.5), 3, Objective::maximize, 41,
                                        TauStrategy::extremize, 0.0, obs, 2),
                  std::invalid_argument);
}
