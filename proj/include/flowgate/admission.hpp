#pragma once

// Flow admission over a candidate alternate path: residual-bandwidth
// screening first, then a two-hypothesis Bayesian link-availability verdict
// per link, with an impassable list that grows across re-computations until
// a fully available path is found or none remains.

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flowgate/topology.hpp"

namespace flowgate::admission {

struct BayesParams {
    double prior_la = 0.5;              // P(link available) prior
    double lik_rb_pos_given_la1 = 0.9;  // P(RB positive | available)
    double lik_rb_pos_given_la0 = 0.6;  // P(RB positive | unavailable)
    double pu_eps = 0.01;               // clamp for observed utilization

    void validate() const;  // throws Error on out-of-range values
};

struct LinkEvidence {
    topology::LinkId link = 0;
    double pu = 0;      // observed utilization fraction in [0, 1]
    double rb_bps = 0;  // residual bandwidth, may be negative
};

// rb = (capacity - measured_tx) - requested. Positive rb gates the Bayesian
// step; rb == 0 does not pass.
double residual_bandwidth(double capacity_bps, double measured_tx_bps,
                          double requested_bps);

// P(available | RB positive, PU observed), normalized over both hypotheses.
// Callers must have screened rb > 0 first (PreconditionViolated otherwise).
double posterior_link_availability(const LinkEvidence& ev,
                                   const BayesParams& p);

// The unnormalized ratio P(RB,PU|LA=1)P(LA=1) / (P(RB)P(PU)) as literally
// stated; can exceed 1. Exposed read-only for comparison, never for decisions.
double unnormalized_posterior(const LinkEvidence& ev, const BayesParams& p);

// rb > 0 and posterior > 1 - posterior.
bool link_available(const LinkEvidence& ev, const BayesParams& p);

struct LinkVerdict {
    topology::LinkId link = 0;
    double rb_bps = 0;
    std::optional<double> posterior;  // unset when rb screening already failed
    bool available = false;
};

struct AdmissionDecision {
    enum class Kind { admitted, rejected };
    Kind kind = Kind::rejected;
    std::optional<topology::Path> path;  // set when admitted
    std::string reason;                  // e.g. "NoAdmissiblePath"
    std::vector<LinkVerdict> trace;      // per-link verdicts, all rounds
    std::set<topology::LinkId> impassable;
    int rounds = 0;
};

using EvidenceFn = std::function<LinkEvidence(topology::LinkId)>;

// Evaluates `alt_path` link by link; links failing rb screening or the
// availability verdict join the impassable list, the path is recomputed on
// `overlay` (which already excludes the bottleneck list) minus the impassable
// list, and evaluation repeats. The impassable list grows strictly every
// round, so rounds are bounded by the link count.
AdmissionDecision admit_flow(const topology::Topology& overlay,
                             const topology::Path& alt_path,
                             topology::NodeId src, topology::NodeId dst,
                             const EvidenceFn& evidence, const BayesParams& p);

}  // namespace flowgate::admission
