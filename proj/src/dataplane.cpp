#include "flowgate/dataplane.hpp"

#include <algorithm>
#include <cmath>

#include "flowgate/errors.hpp"
#include "flowgate/kernels.hpp"

namespace flowgate::dataplane {

SimState::SimState(topology::Topology topo, std::vector<Flow> flows,
                   SimConfig cfg)
    : topo_(std::move(topo)), flows_(std::move(flows)), cfg_(cfg) {
    if (!(cfg_.tick_s > 0)) throw Error("tick_s must be positive");
    const std::size_t nl = topo_.links().size();
    const std::size_t nf = flows_.size();
    fwd_entries_.resize(nf);
    rev_entries_.resize(nf);
    default_paths_.resize(nf);
    ports_.resize(nl);
    counters_.resize(nf);
    capacity_bps_.resize(nl);
    prop_delay_ms_.resize(nl);
    offered_bps_.resize(nl);
    delivered_bps_.resize(nl);
    scale_.resize(nl);
    util_.resize(nl);
    delay_ms_.resize(nl);
    for (const auto& l : topo_.links()) {
        capacity_bps_[l.id] = l.capacity_bps;
        prop_delay_ms_[l.id] = l.prop_delay_ms;
    }
    for (std::size_t i = 0; i < nf; ++i) {
        const Flow& f = flows_[i];
        if (f.id != i) throw Error("flow ids must be dense and ordered");
        if (!(f.rate_pps > 0) || !(f.packet_bytes > 0))
            throw Error("flow '" + f.name + "': rate and packet size must be positive");
        if (!(f.start_s < f.end_s))
            throw Error("flow '" + f.name + "': start_s must precede end_s");
        default_paths_[i] = topology::shortest_path(topo_, f.src_host, f.dst_host);
    }
}

std::int64_t SimState::to_tick(double seconds) const {
    return std::llround(seconds / cfg_.tick_s);
}

bool SimState::entry_active(const FlowTableEntry& e) const {
    return e.installed_tick <= tick_ && tick_ < e.installed_tick + e.timeout_ticks;
}

const FlowTableEntry* SimState::flow_entry(FlowId flow, Direction dir) const {
    if (flow >= flows_.size()) throw Error("unknown flow id");
    const auto& slot =
        dir == Direction::forward ? fwd_entries_[flow] : rev_entries_[flow];
    if (slot && entry_active(*slot)) return &*slot;
    return nullptr;
}

std::optional<topology::Path> SimState::current_path(FlowId flow) const {
    if (const FlowTableEntry* e = flow_entry(flow, Direction::forward))
        return e->path;
    return default_paths_[flow];
}

void SimState::install_flow_entry(FlowId flow,
                                  const topology::Path& forward_path,
                                  double hard_timeout_s) {
    if (flow >= flows_.size()) throw Error("unknown flow id");
    if (!(hard_timeout_s > 0)) throw Error("hard timeout must be positive");
    const Flow& f = flows_[flow];
    if (forward_path.src != f.src_host || forward_path.dst != f.dst_host)
        throw PathMismatch("path endpoints do not match flow '" + f.name + "'");
    if (!path_well_formed(topo_, forward_path))
        throw PathMismatch("path is not a well-formed chain");

    FlowTableEntry fwd;
    fwd.flow = flow;
    fwd.direction = Direction::forward;
    fwd.path = forward_path;
    fwd.installed_at_s = clock_s();
    fwd.hard_timeout_s = hard_timeout_s;
    fwd.installed_tick = tick_;
    fwd.timeout_ticks = std::max<std::int64_t>(1, to_tick(hard_timeout_s));

    FlowTableEntry rev = fwd;
    rev.direction = Direction::reverse;
    rev.path = topology::reverse_path(topo_, forward_path);

    fwd_entries_[flow] = std::move(fwd);
    rev_entries_[flow] = std::move(rev);
}

std::vector<PortStatsSnapshot> SimState::port_stats_snapshot() const {
    std::vector<PortStatsSnapshot> out;
    out.reserve(ports_.size());
    for (std::size_t i = 0; i < ports_.size(); ++i)
        out.push_back({static_cast<topology::LinkId>(i), ports_[i].tx_bytes,
                       ports_[i].drop_bytes});
    return out;
}

std::vector<FlowStatsSnapshot> SimState::flow_stats_snapshot() const {
    std::vector<FlowStatsSnapshot> out;
    out.reserve(flows_.size());
    for (std::size_t i = 0; i < flows_.size(); ++i)
        out.push_back({static_cast<FlowId>(i), counters_[i]});
    return out;
}

const FlowCounters& SimState::flow_counters(FlowId f) const {
    if (f >= counters_.size()) throw Error("unknown flow id");
    return counters_[f];
}

const PortCounters& SimState::port_counters(topology::LinkId l) const {
    if (l >= ports_.size()) throw UnknownLink("unknown link id");
    return ports_[l];
}

bool SimState::flow_active(FlowId f) const {
    const Flow& fl = flows_[f];
    return to_tick(fl.start_s) <= tick_ && tick_ < to_tick(fl.end_s);
}

void SimState::step() {
    // (a) expire entries whose hard timeout has passed
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        if (fwd_entries_[i] && !entry_active(*fwd_entries_[i]))
            fwd_entries_[i].reset();
        if (rev_entries_[i] && !entry_active(*rev_entries_[i]))
            rev_entries_[i].reset();
    }

    const double tick = cfg_.tick_s;
    std::fill(offered_bps_.begin(), offered_bps_.end(), 0.0);
    std::fill(delivered_bps_.begin(), delivered_bps_.end(), 0.0);

    struct ActiveFlow {
        FlowId id;
        const topology::Path* path;
        double rate_bps;
        double fmin = 1.0;
    };
    std::vector<ActiveFlow> active;
    std::vector<std::optional<topology::Path>> paths(flows_.size());

    // (b) offered load per link
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        FlowId id = static_cast<FlowId>(i);
        if (!flow_active(id)) continue;
        const Flow& f = flows_[i];
        double rate = f.requested_bps();
        counters_[i].offered_bytes += rate * tick / 8.0;
        counters_[i].packets_sent += f.rate_pps * tick;
        paths[i] = current_path(id);
        if (!paths[i]) {
            // no route: the whole tick's offer is lost
            counters_[i].dropped_bytes += rate * tick / 8.0;
            if (std::find(unroutable_.begin(), unroutable_.end(), id) ==
                unroutable_.end())
                unroutable_.push_back(id);
            continue;
        }
        for (topology::LinkId l : paths[i]->links) offered_bps_[l] += rate;
        active.push_back({id, &*paths[i], rate});
    }

    kernels::scale_factors(offered_bps_, capacity_bps_, scale_);

    // (c)+(d) deliver at the most-constrained link's share; drops go to the
    // first arg-min link along the path
    for (ActiveFlow& af : active) {
        topology::LinkId argmin = 0;
        bool have_links = !af.path->links.empty();
        for (topology::LinkId l : af.path->links) {
            if (scale_[l] < af.fmin) {
                af.fmin = scale_[l];
                argmin = l;
            }
        }
        double delivered = af.rate_bps * af.fmin;
        double dropped = af.rate_bps - delivered;
        FlowCounters& fc = counters_[af.id];
        fc.byte_count += delivered * tick / 8.0;
        fc.dropped_bytes += dropped * tick / 8.0;
        fc.packets_delivered += flows_[af.id].rate_pps * tick * af.fmin;
        if (dropped > 0 && have_links)
            ports_[argmin].drop_bytes += dropped * tick / 8.0;
        for (topology::LinkId l : af.path->links) {
            ports_[l].tx_bytes += delivered * tick / 8.0;
            delivered_bps_[l] += delivered;
        }
    }

    // (e) delay accounting: queueing utilization is arrival-based, so a
    // link loaded past capacity sits at the clamp even though it only
    // carries what it can deliver
    kernels::utilizations(offered_bps_, capacity_bps_, cfg_.u_clamp, util_);
    kernels::queue_delays(util_, prop_delay_ms_, cfg_.q_coeff_ms, delay_ms_);
    for (const ActiveFlow& af : active) {
        double path_delay = 0;
        for (topology::LinkId l : af.path->links) path_delay += delay_ms_[l];
        double delivered_bytes = af.rate_bps * af.fmin * tick / 8.0;
        counters_[af.id].delay_weighted_sum_ms += path_delay * delivered_bytes;
    }

    ++tick_;
}

}  // namespace flowgate::dataplane
