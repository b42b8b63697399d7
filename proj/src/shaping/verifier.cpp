#include "pbim/verifier.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pbim/envs.hpp"

namespace pbim {

SequenceReturns evaluate_sequence(const VerifyRequest& req, std::span<const ActionId> actions) {
  auto env = req.env->clone();
  const StateId start = env->reset(0);
  auto im = make_intrinsic(req.im, env->state_count());
  im->begin_episode(*env, start);
  MeanTracker tracker;
  tracker.set_frozen_mean(req.fixed_mean);
  ShapingConverter conv(req.mode, req.gamma, &tracker);

  SequenceReturns out;
  double discount = 1.0;
  for (ActionId a : actions) {
    const Transition tr = env->step(a);
    const double raw = im->on_step(*env, tr);
    const double shaped = conv.shape_step(raw, tr.ends_episode());
    out.base += discount * tr.extrinsic_reward;
    out.shaped += discount * (tr.extrinsic_reward + shaped);
    discount *= req.gamma;
    if (tr.ends_episode()) break;
  }
  return out;
}

namespace {

// Keeps every candidate within `tol` of the running maximum; the final
// filter against the true maximum happens in `finish`.
class ArgmaxSet {
 public:
  explicit ArgmaxSet(double tol) : tol_(tol) {}

  void offer(double value, std::span<const ActionId> seq) {
    if (value < best_ - tol_) return;
    if (value > best_) {
      best_ = value;
      std::erase_if(items_, [&](const auto& it) { return it.first < best_ - tol_; });
    }
    ActionSequence copy;
    copy.reserve(seq.size());
    for (ActionId a : seq) copy.push_back(a.value);
    items_.emplace_back(value, std::move(copy));
  }

  std::vector<ActionSequence> finish() const {
    std::vector<ActionSequence> out;
    for (const auto& [v, seq] : items_)
      if (v >= best_ - tol_) out.push_back(seq);
    std::sort(out.begin(), out.end());
    return out;
  }

  double best() const noexcept { return best_; }

 private:
  double tol_;
  double best_ = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, ActionSequence>> items_;
};

}  // namespace

VerifierReport verify_optimality(const VerifyRequest& req) {
  if (req.env == nullptr) throw std::invalid_argument("verifier needs an environment");
  if (!req.env->deterministic())
    throw std::domain_error("verifier supports deterministic environments only");

  ArgmaxSet base(req.tie_tolerance);
  ArgmaxSet shaped(req.tie_tolerance);
  VerifierReport report;

  for_each_action_sequence(
      *req.env, req.env->max_steps(),
      [&](std::span<const ActionId> seq) {
        const SequenceReturns r = evaluate_sequence(req, seq);
        base.offer(r.base, seq);
        shaped.offer(r.shaped, seq);
        ++report.sequences_evaluated;
      },
      req.budget);

  report.optimal_set_base = base.finish();
  report.optimal_set_shaped = shaped.finish();
  report.max_return_base = base.best();
  report.max_return_shaped = shaped.best();
  report.preserved = report.optimal_set_base == report.optimal_set_shaped;
  if (!report.preserved) {
    std::vector<ActionSequence> diff;
    std::set_symmetric_difference(report.optimal_set_base.begin(), report.optimal_set_base.end(),
                                  report.optimal_set_shaped.begin(),
                                  report.optimal_set_shaped.end(), std::back_inserter(diff));
    if (!diff.empty()) report.witness = diff.front();
  }
  return report;
}

}  // namespace pbim
