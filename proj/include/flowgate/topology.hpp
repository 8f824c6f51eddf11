#pragma once

// Directed-graph network model: nodes (switches, hosts), capacity-weighted
// links, exclusion overlays and deterministic shortest paths.
//
// Every physical cable is represented as two directed links sharing a
// cable_id; each directed link stands for the egress port of its src node.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowgate::topology {

using NodeId = std::uint32_t;
using LinkId = std::uint32_t;

inline constexpr double kInfiniteWeight =
    std::numeric_limits<double>::infinity();

enum class NodeKind { Switch, Host };

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::Switch;
    std::string name;
};

struct Link {
    LinkId id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    double capacity_bps = 0;
    double weight = 1.0;      // hop count by default; kInfiniteWeight = excluded
    double prop_delay_ms = 0;
    std::uint32_t cable_id = 0;  // shared by the two directions of one cable
    LinkId reverse = 0;          // the paired opposite-direction link
};

// Ordered chain of directed links from src to dst; empty when src == dst.
struct Path {
    NodeId src = 0;
    NodeId dst = 0;
    std::vector<LinkId> links;

    bool empty() const { return links.empty(); }
    bool operator==(const Path&) const = default;
};

class Topology {
  public:
    Topology() = default;
    Topology(std::vector<Node> nodes, std::vector<Link> links);

    std::span<const Node> nodes() const { return nodes_; }
    std::span<const Link> links() const { return links_; }
    const Node& node(NodeId id) const;
    const Link& link(LinkId id) const;
    std::span<const LinkId> out_links(NodeId id) const;

    std::optional<NodeId> find_node(std::string_view name) const;
    NodeId node_id(std::string_view name) const;  // throws UnknownNode
    // First directed link src->dst, if any.
    std::optional<LinkId> find_link(NodeId src, NodeId dst) const;

    std::size_t switch_count() const;
    std::size_t host_count() const;

    void set_weight(LinkId id, double w);  // used by overlay construction

  private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<LinkId>> out_;
};

// Parsed form of the topology text format ([nodes] / [links] sections).
struct TopologySpec {
    struct NodeSpec {
        std::string name;
        NodeKind kind;
    };
    struct LinkSpec {
        std::string src;
        std::string dst;
        double capacity_mbps;
        double prop_delay_ms;
    };
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
};

// Validates and builds; each LinkSpec becomes two directed links.
// Rejects empty node lists, duplicate names, self loops, dangling endpoints,
// non-positive capacities and mis-attached hosts (MalformedTopology).
Topology load_topology(const TopologySpec& spec);

TopologySpec parse_topology_text(std::string_view text,
                                 std::string_view origin = "<string>");
Topology load_topology_file(const std::filesystem::path& file);

// Built-ins: "abilene", "triangle", "line2".
bool is_builtin_topology(std::string_view name);
Topology builtin_topology(std::string_view name);
// Resolves a builtin name or a file path.
Topology resolve_topology(std::string_view ref);

// Copy of `t` with each excluded link's weight set to kInfiniteWeight.
// Throws UnknownLink for ids not present in `t`.
Topology virtual_overlay(const Topology& t, std::span<const LinkId> excluded);

// Minimum-total-weight path ignoring infinite-weight links; nullopt when
// unreachable. Equal-weight ties resolve to the lexicographically smallest
// link-id sequence, so repeated calls are identical.
std::optional<Path> shortest_path(const Topology& t, NodeId src, NodeId dst);

double path_weight(const Topology& t, const Path& p);
// The same cables traversed dst->src (per-link reverse ids, reversed order).
Path reverse_path(const Topology& t, const Path& p);
// True when every consecutive pair of links chains and no node repeats.
bool path_well_formed(const Topology& t, const Path& p);

}  // namespace flowgate::topology
