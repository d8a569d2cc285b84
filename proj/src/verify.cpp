#include "stockseq/verify.hpp"

#include <functional>

#include "stockseq/alternating.hpp"
#include "stockseq/errors.hpp"
#include "stockseq/gasoline.hpp"
#include "stockseq/instances.hpp"
#include "stockseq/oracles.hpp"
#include "stockseq/slated.hpp"

namespace stockseq::verify {

namespace {

class Checker {
 public:
  explicit Checker(SuiteReport& r) : report_(r) {}

  void expect(bool cond, std::size_t instance, const std::string& what) {
    ++report_.checks;
    if (!cond) report_.violations.push_back("instance " + std::to_string(instance) + ": " + what);
  }

  // Runs one instance; any library exception counts as a violation.
  void guarded(std::size_t instance, const std::function<void()>& body) {
    ++report_.instances;
    try {
      body();
    } catch (const std::exception& e) {
      report_.violations.push_back("instance " + std::to_string(instance) + ": exception: " + e.what());
    }
  }

 private:
  SuiteReport& report_;
};

}  // namespace

SuiteReport verify_alternating(std::size_t count, std::uint64_t seed) {
  SuiteReport report{"alt"};
  Checker c(report);
  const Rational eps = alternating::default_epsilon();
  for (std::size_t k = 0; k < count; ++k) {
    c.guarded(k, [&] {
      const std::size_t n = 1 + k % 7;
      const auto inst = instances::random_alternating(n, seed + k);
      const auto m = alternating::sorted_matching(inst);
      const auto mb = oracles::exact_matching_bounds(inst);
      c.expect(m.alpha1 == mb.alpha1 && m.beta1 == mb.beta1, k, "rank matching is not optimal for alpha1/beta1");

      const auto pairing = evaluate_alternating(inst, alternating::pairing_algorithm(inst));
      const Rational mu = inst.mu();
      c.expect(pairing.feasible, k, "pairing result infeasible");
      c.expect(pairing.beta <= mu + std::max(m.alpha1, m.beta1), k, "pairing exceeds mu + max(alpha1, beta1)");
      c.expect(pairing.beta <= Rational(2) * mu, k, "pairing exceeds 2 mu");

      const auto opt = oracles::exact_alternating(inst);
      c.expect(evaluate_alternating(inst, opt.witness).beta == opt.optimum, k, "oracle witness disagrees");
      c.expect(opt.optimum >= mu, k, "oracle optimum below mu");

      const auto dec = alternating::barrier_decompose(inst, eps);
      if (dec.s) c.expect(alternating::lower_bound(dec) <= opt.optimum, k, "barrier lower bound exceeds OPT");
      if (dec.n_a > dec.n_b) c.expect(alternating::lower_bound_max(dec) <= opt.optimum, k, "max lower bound exceeds OPT");

      const auto approx = alternating::approx_alternating(inst, eps);
      const auto prof = evaluate_alternating(inst, approx.arrangement);
      c.expect(prof.feasible, k, "approx result infeasible");
      c.expect(prof.beta <= Rational(179, 100) * opt.optimum, k, "approx exceeds 1.79 OPT");
    });
  }
  return report;
}

SuiteReport verify_gasoline(std::size_t count, std::uint64_t seed) {
  SuiteReport report{"gasoline"};
  Checker c(report);
  for (std::size_t k = 0; k < count; ++k) {
    c.guarded(k, [&] {
      const std::size_t n = 1 + k % 6;
      const auto inst = instances::random_gasoline(n, seed + k);
      const auto lp = gasoline::solve_lp(inst);
      const auto cons = gasoline::enforce_consecutiveness(lp.matrix);
      c.expect(cons.matrix.col_values() == lp.matrix.col_values(), k, "column values changed");
      c.expect(gasoline::check_consecutiveness(cons.matrix), k, "matrix not consecutive");
      c.expect(cons.transforms <= n * n * n * n, k, "more than n^4 transforms");
      const auto blocks = gasoline::block_scan(cons.matrix);
      c.expect(blocks.size() == n, k, "block scan skipped columns");
      const auto r = gasoline::round(cons.matrix);
      for (const auto& e : r.prefix_error) c.expect(e.sign() >= 0 && e <= inst.mu_x(), k, "rounding error out of band");

      const auto res = gasoline::gasoline_2approx(inst);
      const auto opt = oracles::exact_gasoline(inst);
      c.expect(res.profile.eta <= res.certificate.bound, k, "eta above eta_lp + mu_x");
      c.expect(res.certificate.eta_lp <= opt.optimum, k, "LP value above OPT");
      c.expect(res.profile.eta <= Rational(2) * opt.optimum, k, "eta above 2 OPT");
    });
  }
  return report;
}

SuiteReport verify_slated(std::size_t count, std::uint64_t seed) {
  SuiteReport report{"slated"};
  Checker c(report);
  for (std::size_t k = 0; k < count; ++k) {
    c.guarded(k, [&] {
      const std::size_t n = 2 + k % 6;
      const auto inst = instances::random_slated(n, seed + k);
      const auto res = slated::slated_3approx(inst);
      const auto opt = oracles::exact_slated(inst);
      c.expect(res.certificate.phase1_value <= res.certificate.phase1_bound, k, "first phase above eta_lp + mu_y");
      c.expect(res.profile.eta <= res.certificate.bound, k, "eta above eta_lp + mu_x + mu_y");
      c.expect(res.certificate.eta_lp <= opt.optimum, k, "LP value above OPT");
      c.expect(res.profile.eta <= Rational(3) * opt.optimum, k, "eta above 3 OPT");
    });
  }
  return report;
}

}  // namespace stockseq::verify
