#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace esn {

enum class TopologyFamily { wide, layered, criss_cross, wide_layered };

/// One of the four feedforward layouts. Config grammar: "wide:3", "layered:3",
/// "crisscross:2", "wide+layered:2x2" (name, colon, integers separated by x).
struct TopologyKind {
    TopologyFamily family = TopologyFamily::wide;
    int width = 1;  // wide: reservoir count | criss_cross: column size n | wide_layered: chains
    int depth = 1;  // layered: reservoir count | wide_layered: chain length

    static TopologyKind wide(int w);
    static TopologyKind layered(int d);
    static TopologyKind criss_cross(int n);
    static TopologyKind wide_layered(int w, int d);

    int reservoir_count() const;

    static TopologyKind parse(std::string_view s);
    std::string str() const;

    bool operator==(const TopologyKind&) const = default;
};

/// Binary acyclic adjacency over the sources {u, r1..rN}. Source 0 is the
/// input u; reservoirs are 1-based. Edges run from the input or from a
/// lower-index reservoir to a strictly higher-index one.
class ConnectivityMatrix {
public:
    static constexpr int input_source = 0;

    explicit ConnectivityMatrix(int n_reservoirs);

    int reservoir_count() const { return n_; }
    int source_count() const { return n_ + 1; }

    bool edge(int src, int dst) const;
    void add_edge(int src, int dst);

    /// Out-degree of a source (the paper's count of 1-entries per row).
    int fan(int src) const;
    /// In-degree of a reservoir.
    int fan_in(int dst) const;

    /// Sources s with an edge s -> l, in source order. l in [1, N].
    std::vector<int> predecessors(int l) const;

private:
    int n_;
    std::vector<std::uint8_t> e_;  // (n+1) x (n+1), row = src, col = dst

    void check_source(int s, const char* who) const;
    void check_reservoir(int r, const char* who) const;
};

/// Builds the connectivity for a topology. Every reservoir ends up reachable
/// from the input and the reservoir-only adjacency is strictly upper
/// triangular.
ConnectivityMatrix build_connectivity(const TopologyKind& kind);

}  // namespace esn
