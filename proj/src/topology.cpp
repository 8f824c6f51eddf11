#include "flowgate/topology.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "flowgate/errors.hpp"

namespace flowgate::topology {

namespace {

// Built-in topologies, in the same text format the file loader accepts.
//
// The Abilene graph is the 11-node / 14-edge Internet Topology Zoo backbone.
// Switch letters map to cities in this order:
//   A KansasCity, B Houston, C Atlanta, D LosAngeles, E Indianapolis,
//   F Chicago, G Denver, H WashingtonDC, I NewYork, J Sunnyvale, K Seattle
// H1 sits on the three-way KansasCity hub, and A-B is the KansasCity-Houston
// cable with a three-hop detour around it. Backbone links run at 20 Mbps;
// host access links are fast (1000 Mbps) so that switch egress ports are
// the part of the network that saturates first.
constexpr std::string_view kAbilene = R"(# Abilene backbone (Internet Topology Zoo), letters A..K, hosts H1..H11
[nodes]
A switch
B switch
C switch
D switch
E switch
F switch
G switch
H switch
I switch
J switch
K switch
H1 host
H2 host
H3 host
H4 host
H5 host
H6 host
H7 host
H8 host
H9 host
H10 host
H11 host
[links]
# src dst capacity_mbps prop_delay_ms
B A 20 1
B C 20 1
B D 20 1
A E 20 1
A G 20 1
C E 20 1
C H 20 1
D J 20 1
E F 20 1
F I 20 1
G J 20 1
G K 20 1
H I 20 1
J K 20 1
H1 A 1000 0.01
H2 B 1000 0.01
H3 E 1000 0.01
H4 H 1000 0.01
H5 G 1000 0.01
H6 I 1000 0.01
H7 K 1000 0.01
H8 J 1000 0.01
H9 F 1000 0.01
H10 C 1000 0.01
H11 D 1000 0.01
)";

constexpr std::string_view kTriangle = R"([nodes]
A switch
B switch
C switch
H1 host
H2 host
H3 host
[links]
A B 20 1
A C 20 1
C B 20 1
H1 A 1000 0.01
H2 B 1000 0.01
H3 C 1000 0.01
)";

constexpr std::string_view kLine2 = R"([nodes]
A switch
B switch
H1 host
H2 host
[links]
A B 20 1
H1 A 1000 0.01
H2 B 1000 0.01
)";

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double parse_number(const std::string& s, std::string_view what,
                    std::string_view origin) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw MalformedTopology(std::string(origin) + ": bad " +
                                std::string(what) + " '" + s + "'");
    }
}

}  // namespace

Topology::Topology(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
    out_.resize(nodes_.size());
    for (const Link& l : links_) out_[l.src].push_back(l.id);
}

const Node& Topology::node(NodeId id) const {
    if (id >= nodes_.size())
        throw UnknownNode("unknown node id " + std::to_string(id));
    return nodes_[id];
}

const Link& Topology::link(LinkId id) const {
    if (id >= links_.size())
        throw UnknownLink("unknown link id " + std::to_string(id));
    return links_[id];
}

std::span<const LinkId> Topology::out_links(NodeId id) const {
    if (id >= nodes_.size())
        throw UnknownNode("unknown node id " + std::to_string(id));
    return out_[id];
}

std::optional<NodeId> Topology::find_node(std::string_view name) const {
    for (const Node& n : nodes_)
        if (n.name == name) return n.id;
    return std::nullopt;
}

NodeId Topology::node_id(std::string_view name) const {
    if (auto id = find_node(name)) return *id;
    throw UnknownNode("unknown node '" + std::string(name) + "'");
}

std::optional<LinkId> Topology::find_link(NodeId src, NodeId dst) const {
    if (src >= nodes_.size() || dst >= nodes_.size())
        throw UnknownNode("unknown node id");
    for (LinkId l : out_[src])
        if (links_[l].dst == dst) return l;
    return std::nullopt;
}

std::size_t Topology::switch_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(),
                      [](const Node& n) { return n.kind == NodeKind::Switch; }));
}

std::size_t Topology::host_count() const {
    return nodes_.size() - switch_count();
}

void Topology::set_weight(LinkId id, double w) {
    if (id >= links_.size())
        throw UnknownLink("unknown link id " + std::to_string(id));
    links_[id].weight = w;
}

Topology load_topology(const TopologySpec& spec) {
    if (spec.nodes.empty()) throw MalformedTopology("topology has no nodes");

    std::vector<Node> nodes;
    std::map<std::string, NodeId, std::less<>> by_name;
    for (const auto& ns : spec.nodes) {
        if (ns.name.empty()) throw MalformedTopology("empty node name");
        auto [it, fresh] =
            by_name.emplace(ns.name, static_cast<NodeId>(nodes.size()));
        if (!fresh)
            throw MalformedTopology("duplicate node '" + ns.name + "'");
        nodes.push_back({it->second, ns.kind, ns.name});
    }

    std::vector<Link> links;
    std::uint32_t cable = 0;
    for (const auto& ls : spec.links) {
        auto s = by_name.find(ls.src);
        auto d = by_name.find(ls.dst);
        if (s == by_name.end())
            throw MalformedTopology("link endpoint '" + ls.src +
                                    "' is not a declared node");
        if (d == by_name.end())
            throw MalformedTopology("link endpoint '" + ls.dst +
                                    "' is not a declared node");
        if (s->second == d->second)
            throw MalformedTopology("self-loop link at '" + ls.src + "'");
        if (!(ls.capacity_mbps > 0))
            throw MalformedTopology("non-positive capacity on link " + ls.src +
                                    "-" + ls.dst);
        if (ls.prop_delay_ms < 0)
            throw MalformedTopology("negative delay on link " + ls.src + "-" +
                                    ls.dst);
        LinkId fwd = static_cast<LinkId>(links.size());
        LinkId rev = fwd + 1;
        double cap = ls.capacity_mbps * 1e6;
        links.push_back(
            {fwd, s->second, d->second, cap, 1.0, ls.prop_delay_ms, cable, rev});
        links.push_back(
            {rev, d->second, s->second, cap, 1.0, ls.prop_delay_ms, cable, fwd});
        ++cable;
    }

    // every host attaches to exactly one switch
    std::vector<int> host_cables(nodes.size(), 0);
    for (const Link& l : links) {
        if (nodes[l.src].kind == NodeKind::Host) {
            if (nodes[l.dst].kind != NodeKind::Switch)
                throw MalformedTopology("host '" + nodes[l.src].name +
                                        "' linked to a non-switch");
            ++host_cables[l.src];
        }
    }
    for (const Node& n : nodes) {
        if (n.kind == NodeKind::Host && host_cables[n.id] != 1)
            throw MalformedTopology("host '" + n.name + "' attaches to " +
                                    std::to_string(host_cables[n.id]) +
                                    " switches (expected 1)");
    }

    return Topology(std::move(nodes), std::move(links));
}

TopologySpec parse_topology_text(std::string_view text,
                                 std::string_view origin) {
    TopologySpec spec;
    enum class Section { none, nodes, links } section = Section::none;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line{raw};
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        std::string ctx = std::string(origin) + ":" + std::to_string(lineno);
        if (fields[0] == "[nodes]") {
            section = Section::nodes;
        } else if (fields[0] == "[links]") {
            section = Section::links;
        } else if (section == Section::nodes) {
            if (fields.size() != 2 || (fields[1] != "switch" && fields[1] != "host"))
                throw MalformedTopology(ctx + ": expected '<name> switch|host'");
            spec.nodes.push_back(
                {fields[0],
                 fields[1] == "host" ? NodeKind::Host : NodeKind::Switch});
        } else if (section == Section::links) {
            if (fields.size() != 4)
                throw MalformedTopology(
                    ctx + ": expected '<src> <dst> <capacity_mbps> <prop_delay_ms>'");
            spec.links.push_back({fields[0], fields[1],
                                  parse_number(fields[2], "capacity", ctx),
                                  parse_number(fields[3], "delay", ctx)});
        } else {
            throw MalformedTopology(ctx + ": content outside [nodes]/[links]");
        }
    }
    return spec;
}

Topology load_topology_file(const std::filesystem::path& file) {
    std::ifstream in{file};
    if (!in)
        throw MalformedTopology("cannot open topology file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_topology(parse_topology_text(buf.str(), file.string()));
}

bool is_builtin_topology(std::string_view name) {
    return name == "abilene" || name == "triangle" || name == "line2";
}

Topology builtin_topology(std::string_view name) {
    std::string_view text;
    if (name == "abilene")
        text = kAbilene;
    else if (name == "triangle")
        text = kTriangle;
    else if (name == "line2")
        text = kLine2;
    else
        throw MalformedTopology("unknown builtin topology '" +
                                std::string(name) + "'");
    return load_topology(parse_topology_text(text, name));
}

Topology resolve_topology(std::string_view ref) {
    if (is_builtin_topology(ref)) return builtin_topology(ref);
    return load_topology_file(std::filesystem::path(ref));
}

Topology virtual_overlay(const Topology& t, std::span<const LinkId> excluded) {
    Topology overlay = t;
    for (LinkId id : excluded) overlay.set_weight(id, kInfiniteWeight);
    return overlay;
}

std::optional<Path> shortest_path(const Topology& t, NodeId src, NodeId dst) {
    const auto n = t.nodes().size();
    if (src >= n) throw UnknownNode("unknown node id " + std::to_string(src));
    if (dst >= n) throw UnknownNode("unknown node id " + std::to_string(dst));
    if (src == dst) return Path{src, dst, {}};

    // Distance-to-dst over the reverse graph, then a greedy forward walk that
    // picks the smallest link id consistent with the distances. The greedy
    // choice yields the lexicographically smallest link-id sequence among
    // minimum-weight paths.
    std::vector<double> dist(n, kInfiniteWeight);
    std::vector<char> done(n, 0);
    dist[dst] = 0.0;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, dst});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        // relax incoming links u->v, i.e. the reverses of v's outgoing cables
        for (LinkId out : t.out_links(v)) {
            const Link& rev = t.link(t.link(out).reverse);  // rev: u -> v
            if (rev.weight == kInfiniteWeight) continue;
            NodeId u = rev.src;
            double nd = d + rev.weight;
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
    }
    if (dist[src] == kInfiniteWeight) return std::nullopt;

    Path path{src, dst, {}};
    std::vector<char> visited(n, 0);
    NodeId at = src;
    while (at != dst) {
        visited[at] = 1;
        bool advanced = false;
        // out_links are in insertion order; scan ascending link id
        std::vector<LinkId> outs(t.out_links(at).begin(), t.out_links(at).end());
        std::sort(outs.begin(), outs.end());
        for (LinkId id : outs) {
            const Link& l = t.link(id);
            if (l.weight == kInfiniteWeight || visited[l.dst]) continue;
            if (dist[l.dst] != kInfiniteWeight && l.weight + dist[l.dst] == dist[at]) {
                path.links.push_back(id);
                at = l.dst;
                advanced = true;
                break;
            }
        }
        if (!advanced) return std::nullopt;  // zero-weight cycle guard
    }
    return path;
}

double path_weight(const Topology& t, const Path& p) {
    double w = 0;
    for (LinkId id : p.links) w += t.link(id).weight;
    return w;
}

Path reverse_path(const Topology& t, const Path& p) {
    Path r{p.dst, p.src, {}};
    r.links.reserve(p.links.size());
    for (auto it = p.links.rbegin(); it != p.links.rend(); ++it)
        r.links.push_back(t.link(*it).reverse);
    return r;
}

bool path_well_formed(const Topology& t, const Path& p) {
    if (p.links.empty()) return p.src == p.dst;
    std::set<NodeId> seen;
    NodeId at = p.src;
    for (LinkId id : p.links) {
        const Link& l = t.link(id);
        if (l.src != at) return false;
        if (!seen.insert(at).second) return false;
        at = l.dst;
    }
    if (at != p.dst) return false;
    return seen.find(at) == seen.end();
}

}  // namespace flowgate::topology
