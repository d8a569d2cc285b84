#include "stockseq/slated.hpp"

#include <algorithm>
#include <numeric>

#include "stockseq/errors.hpp"

namespace stockseq::slated {

namespace {

void validate(const GeneralizedGasolineInstance& g) {
  const auto free_count = static_cast<std::size_t>(std::count(g.slots.begin(), g.slots.end(), SlotRole::Free));
  if (free_count != g.free_jobs.size()) throw InvalidInstance("free job count differs from the number of free slots");
  if (g.slots.size() - free_count != g.fixed.size()) {
    throw InvalidInstance("fixed value count differs from the number of fixed slots");
  }
  if (free_count == 0) throw InvalidInstance("generalized instance needs at least one free slot");
  for (const auto& v : g.free_jobs) {
    if (v.sign() <= 0) throw InvalidInstance("free jobs must be positive");
  }
  for (const auto& v : g.fixed) {
    if (v.sign() < 0) throw InvalidInstance("fixed values must be nonnegative");
  }
}

}  // namespace

StockProfile evaluate_generalized(const GeneralizedGasolineInstance& g, std::span<const std::size_t> assignment) {
  validate(g);
  if (!is_permutation(assignment, g.free_jobs.size())) throw InvalidArrangement("assignment is not a permutation");
  const bool add = g.side == FreeSide::Add;
  Values seq;
  seq.reserve(g.slots.size());
  std::size_t f = 0;
  std::size_t d = 0;
  for (auto role : g.slots) {
    if (role == SlotRole::Free) {
      const Rational& v = g.free_jobs[assignment[f++]];
      seq.push_back(add ? v : -v);
    } else {
      const Rational& v = g.fixed[d++];
      seq.push_back(add ? -v : v);
    }
  }
  return profile_of_sequence(seq);
}

GasolineReduction reduce_to_gasoline(const GeneralizedGasolineInstance& g) {
  validate(g);
  const std::size_t n = g.slots.size();

  // Slot order to walk, plus the free/fixed ordinal of each slot. Negating
  // the sequence for FreeSide::Subtract does not change the value, so the
  // free jobs always become the added side.
  std::vector<std::size_t> ordinal(n);
  {
    std::size_t f = 0;
    std::size_t d = 0;
    for (std::size_t s = 0; s < n; ++s) ordinal[s] = g.slots[s] == SlotRole::Free ? f++ : d++;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  bool reversed = false;
  std::size_t rotation = 0;
  if (g.slots.front() != SlotRole::Free) {
    if (g.slots.back() == SlotRole::Free) {
      std::reverse(order.begin(), order.end());
      reversed = true;
    } else if (sum(g.free_jobs) == sum(g.fixed)) {
      rotation = static_cast<std::size_t>(std::find(g.slots.begin(), g.slots.end(), SlotRole::Free) - g.slots.begin());
      std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(rotation), order.end());
    } else {
      throw InvalidInstance("pattern starts and ends with fixed slots and the totals differ");
    }
  }

  Values x;
  Values y;
  std::vector<std::size_t> position_of_free(g.free_jobs.size());
  for (std::size_t s : order) {
    if (g.slots[s] == SlotRole::Free) {
      position_of_free[ordinal[s]] = x.size();
      x.push_back(g.free_jobs[ordinal[s]]);
      y.emplace_back();
    } else {
      y.back() += g.fixed[ordinal[s]];
    }
  }
  return GasolineReduction{GasolineInstance(std::move(x), std::move(y)), std::move(position_of_free), reversed,
                           rotation};
}

std::vector<std::size_t> translate_back(const GasolineReduction& r, std::span<const std::size_t> pi) {
  if (!is_permutation(pi, r.gasoline.size())) throw InvalidArrangement("gasoline permutation has the wrong size");
  // x_origin gives the walk position a job came from; after a reversal or
  // rotation that is not its index in free_jobs.
  std::vector<std::size_t> job_at(r.position_of_free.size());
  for (std::size_t k = 0; k < job_at.size(); ++k) job_at[r.position_of_free[k]] = k;
  std::vector<std::size_t> assignment(r.position_of_free.size());
  for (std::size_t k = 0; k < assignment.size(); ++k) {
    assignment[k] = job_at[r.gasoline.x_origin()[pi[r.position_of_free[k]]]];
  }
  return assignment;
}

GeneralizedResult solve_generalized(const GeneralizedGasolineInstance& g) {
  const GasolineReduction red = reduce_to_gasoline(g);
  gasoline::GasolineResult gr = gasoline::gasoline_2approx(red.gasoline);
  GeneralizedResult res;
  res.assignment = translate_back(red, gr.pi);
  res.profile = evaluate_generalized(g, res.assignment);
  if (res.profile.eta != gr.profile.eta) throw InternalConsistency("reduction changed the value of a solution");
  res.certificate = gr.certificate;
  return res;
}

GeneralizedResult permute_y_variant(const YPermutableInstance& inst) {
  if (inst.x.size() != inst.y.size()) throw InvalidInstance("y-permutable instance needs |x| = |y|");
  GeneralizedGasolineInstance g;
  g.side = FreeSide::Subtract;
  g.fixed = inst.x;
  g.free_jobs = inst.y;
  for (std::size_t t = 0; t < inst.x.size(); ++t) {
    g.slots.push_back(SlotRole::Fixed);
    g.slots.push_back(SlotRole::Free);
  }
  return solve_generalized(g);
}

SlatedLp build_slated_lp(const SlatedInstance& inst) {
  SlatedLp out;
  out.nx = inst.x().size();
  out.ny = inst.y().size();
  const std::size_t nx = out.nx;
  const std::size_t ny = out.ny;
  out.beta_var = nx * nx + ny * ny;
  out.a_var = out.beta_var + 1;
  out.problem = lp::Problem(out.a_var + 1);
  auto& p = out.problem;

  auto stochastic = [&](std::size_t m, auto var) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<lp::Term> row;
      std::vector<lp::Term> col;
      for (std::size_t s = 0; s < m; ++s) {
        row.push_back({var(i, s), Rational(1)});
        col.push_back({var(s, i), Rational(1)});
      }
      p.add_constraint(std::move(row), lp::Sense::Equal, Rational(1));
      p.add_constraint(std::move(col), lp::Sense::Equal, Rational(1));
    }
  };
  stochastic(nx, [&](std::size_t i, std::size_t s) { return out.zx(i, s); });
  stochastic(ny, [&](std::size_t i, std::size_t s) { return out.zy(i, s); });

  std::vector<lp::Term> level;
  std::size_t sx = 0;
  std::size_t sy = 0;
  for (auto kind : inst.slots()) {
    if (kind == SlotKind::X) {
      for (std::size_t i = 0; i < nx; ++i) level.push_back({out.zx(i, sx), inst.x()[i]});
      ++sx;
    } else {
      for (std::size_t i = 0; i < ny; ++i) level.push_back({out.zy(i, sy), -inst.y()[i]});
      ++sy;
    }
    auto upper = level;
    upper.push_back({out.beta_var, Rational(-1)});
    p.add_constraint(std::move(upper), lp::Sense::LessEqual, Rational(0));
    auto lower = level;
    lower.push_back({out.a_var, Rational(1)});
    p.add_constraint(std::move(lower), lp::Sense::GreaterEqual, Rational(0));
  }
  p.set_objective({{out.beta_var, Rational(1)}, {out.a_var, Rational(1)}});
  return out;
}

SlatedLpSolution solve_slated_lp(const SlatedInstance& inst) {
  const SlatedLp model = build_slated_lp(inst);
  const lp::Solution sol = lp::minimize(model.problem);
  SlatedLpSolution out;
  out.zx.assign(model.nx, std::vector<Rational>(model.nx));
  out.zy.assign(model.ny, std::vector<Rational>(model.ny));
  for (std::size_t i = 0; i < model.nx; ++i) {
    for (std::size_t s = 0; s < model.nx; ++s) out.zx[i][s] = sol.values[model.zx(i, s)];
  }
  for (std::size_t i = 0; i < model.ny; ++i) {
    for (std::size_t s = 0; s < model.ny; ++s) out.zy[i][s] = sol.values[model.zy(i, s)];
  }
  out.beta = sol.values[model.beta_var];
  out.alpha = -sol.values[model.a_var];
  return out;
}

namespace {

// Fractional value per slot: sum_i z[i][s] * v[i].
Values slot_values(const gasoline::Grid& z, const Values& v) {
  Values out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (!z[i][s].is_zero()) out[s] += z[i][s] * v[i];
    }
  }
  return out;
}

std::vector<SlotRole> roles_for(const std::vector<SlotKind>& slots, SlotKind free_kind) {
  std::vector<SlotRole> roles;
  roles.reserve(slots.size());
  for (auto k : slots) roles.push_back(k == free_kind ? SlotRole::Free : SlotRole::Fixed);
  return roles;
}

}  // namespace

SlatedResult slated_3approx(const SlatedInstance& inst, PhaseOrder order) {
  const SlatedLpSolution lp = solve_slated_lp(inst);
  SlatedResult res;
  auto& cert = res.certificate;
  cert.eta_lp = lp.eta();
  cert.mu_x = inst.mu_x();
  cert.mu_y = inst.mu_y();
  cert.bound = cert.eta_lp + cert.mu_x + cert.mu_y;

  const bool y_first = order == PhaseOrder::YFirst;
  const SlotKind first_kind = y_first ? SlotKind::Y : SlotKind::X;
  const SlotKind second_kind = y_first ? SlotKind::X : SlotKind::Y;
  const Values& first_jobs = y_first ? inst.y() : inst.x();
  const Values& second_jobs = y_first ? inst.x() : inst.y();
  const FreeSide first_side = y_first ? FreeSide::Subtract : FreeSide::Add;
  const FreeSide second_side = y_first ? FreeSide::Add : FreeSide::Subtract;

  GeneralizedGasolineInstance g1;
  g1.slots = roles_for(inst.slots(), first_kind);
  g1.fixed = y_first ? slot_values(lp.zx, inst.x()) : slot_values(lp.zy, inst.y());
  g1.free_jobs = first_jobs;
  g1.side = first_side;
  const GeneralizedResult r1 = solve_generalized(g1);
  cert.phase1_value = r1.profile.eta;
  cert.phase1_bound = cert.eta_lp + (y_first ? cert.mu_y : cert.mu_x);
  if (cert.phase1_value > cert.phase1_bound) throw InternalConsistency("first phase exceeded eta_lp + mu");

  GeneralizedGasolineInstance g2;
  g2.slots = roles_for(inst.slots(), second_kind);
  for (std::size_t idx : r1.assignment) g2.fixed.push_back(first_jobs[idx]);
  g2.free_jobs = second_jobs;
  g2.side = second_side;
  const GeneralizedResult r2 = solve_generalized(g2);

  if (y_first) {
    res.arrangement.nu = r1.assignment;
    res.arrangement.sigma = r2.assignment;
  } else {
    res.arrangement.sigma = r1.assignment;
    res.arrangement.nu = r2.assignment;
  }
  res.profile = evaluate_slated(inst, res.arrangement);
  if (res.profile.eta != r2.profile.eta) throw InternalConsistency("slated evaluation disagrees with the last phase");
  if (res.profile.eta > cert.bound) throw InternalConsistency("slated value exceeded eta_lp + mu_x + mu_y");
  return res;
}

}  // namespace stockseq::slated
