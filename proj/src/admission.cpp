#include "flowgate/admission.hpp"

#include <algorithm>

#include "flowgate/errors.hpp"

namespace flowgate::admission {

namespace {

double clamp_pu(double pu, double eps) {
    return std::clamp(pu, eps, 1.0 - eps);
}

}  // namespace

void BayesParams::validate() const {
    auto prob = [](double v) { return v > 0.0 && v < 1.0; };
    if (!prob(prior_la) || !prob(lik_rb_pos_given_la1) ||
        !prob(lik_rb_pos_given_la0))
        throw Error("BayesParams: probabilities must lie in (0,1)");
    if (!(pu_eps > 0.0 && pu_eps < 0.5))
        throw Error("BayesParams: pu_eps must lie in (0, 0.5)");
}

double residual_bandwidth(double capacity_bps, double measured_tx_bps,
                          double requested_bps) {
    return (capacity_bps - measured_tx_bps) - requested_bps;
}

double posterior_link_availability(const LinkEvidence& ev,
                                   const BayesParams& p) {
    if (!(ev.rb_bps > 0))
        throw PreconditionViolated(
            "posterior requested for link with non-positive residual bandwidth");
    double pu = clamp_pu(ev.pu, p.pu_eps);
    // P(PU | LA=1) = 1 - pu', P(PU | LA=0) = pu'
    double n1 = p.lik_rb_pos_given_la1 * (1.0 - pu) * p.prior_la;
    double n0 = p.lik_rb_pos_given_la0 * pu * (1.0 - p.prior_la);
    return n1 / (n1 + n0);
}

double unnormalized_posterior(const LinkEvidence& ev, const BayesParams& p) {
    double pu = clamp_pu(ev.pu, p.pu_eps);
    double p_rb = ev.rb_bps > 0 ? 1.0 : 0.0;
    if (p_rb == 0.0) return 0.0;
    return (p.lik_rb_pos_given_la1 * (1.0 - pu) * p.prior_la) / (p_rb * pu);
}

bool link_available(const LinkEvidence& ev, const BayesParams& p) {
    if (!(ev.rb_bps > 0)) return false;
    double post = posterior_link_availability(ev, p);
    return post > 1.0 - post;
}

AdmissionDecision admit_flow(const topology::Topology& overlay,
                             const topology::Path& alt_path,
                             topology::NodeId src, topology::NodeId dst,
                             const EvidenceFn& evidence, const BayesParams& p) {
    p.validate();

    AdmissionDecision decision;
    std::optional<topology::Path> candidate = alt_path;
    // Each round either admits or strictly grows the impassable list, so the
    // loop runs at most once per link.
    const std::size_t max_rounds = overlay.links().size() + 1;

    for (std::size_t round = 0; round < max_rounds; ++round) {
        ++decision.rounds;
        bool all_available = true;
        std::size_t il_before = decision.impassable.size();

        for (topology::LinkId id : candidate->links) {
            LinkEvidence ev = evidence(id);
            ev.link = id;
            LinkVerdict verdict{id, ev.rb_bps, std::nullopt, false};
            if (!(ev.rb_bps > 0)) {
                // insufficient bandwidth; no posterior is ever computed
                decision.impassable.insert(id);
                all_available = false;
            } else {
                double post = posterior_link_availability(ev, p);
                verdict.posterior = post;
                if (post > 1.0 - post) {
                    verdict.available = true;
                } else {
                    decision.impassable.insert(id);
                    all_available = false;
                }
            }
            decision.trace.push_back(verdict);
        }

        if (all_available) {
            decision.kind = AdmissionDecision::Kind::admitted;
            decision.path = std::move(candidate);
            return decision;
        }
        if (decision.impassable.size() == il_before) break;  // cannot happen

        std::vector<topology::LinkId> il(decision.impassable.begin(),
                                         decision.impassable.end());
        auto next = shortest_path(virtual_overlay(overlay, il), src, dst);
        if (!next) {
            decision.kind = AdmissionDecision::Kind::rejected;
            decision.reason = "NoAdmissiblePath";
            return decision;
        }
        candidate = std::move(next);
    }

    decision.kind = AdmissionDecision::Kind::rejected;
    decision.reason = "NoAdmissiblePath";
    return decision;
}

}  // namespace flowgate::admission
