#include "moddeepesn/topology.hpp"

#include <charconv>
#include <stdexcept>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

void check_positive(int v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
        throw config_error("bad topology size in '" + std::string(whole) + "'");
    return v;
}

}  // namespace

TopologyKind TopologyKind::wide(int w) {
    check_positive(w, "wide width");
    return {TopologyFamily::wide, w, 1};
}

TopologyKind TopologyKind::layered(int d) {
    check_positive(d, "layered depth");
    return {TopologyFamily::layered, 1, d};
}

TopologyKind TopologyKind::criss_cross(int n) {
    check_positive(n, "criss-cross n");
    return {TopologyFamily::criss_cross, n, n};
}

TopologyKind TopologyKind::wide_layered(int w, int d) {
    check_positive(w, "wide+layered width");
    check_positive(d, "wide+layered depth");
    return {TopologyFamily::wide_layered, w, d};
}

int TopologyKind::reservoir_count() const {
    switch (family) {
        case TopologyFamily::wide: return width;
        case TopologyFamily::layered: return depth;
        case TopologyFamily::criss_cross: return width * width;
        case TopologyFamily::wide_layered: return width * depth;
    }
    throw std::logic_error("unknown topology family");
}

TopologyKind TopologyKind::parse(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw config_error("topology '" + std::string(s) + "': expected name:sizes");
    std::string_view name = s.substr(0, colon);
    std::string_view sizes = s.substr(colon + 1);
    auto x = sizes.find('x');
    if (name == "wide") {
        if (x != std::string_view::npos) throw config_error("wide takes a single size");
        return wide(parse_int(sizes, s));
    }
    if (name == "layered") {
        if (x != std::string_view::npos) throw config_error("layered takes a single size");
        return layered(parse_int(sizes, s));
    }
    if (name == "crisscross") {
        if (x != std::string_view::npos) throw config_error("crisscross takes a single size");
        return criss_cross(parse_int(sizes, s));
    }
    if (name == "wide+layered") {
        if (x == std::string_view::npos)
            throw config_error("wide+layered takes WxD sizes, e.g. wide+layered:2x2");
        return wide_layered(parse_int(sizes.substr(0, x), s), parse_int(sizes.substr(x + 1), s));
    }
    throw config_error("unknown topology '" + std::string(name) + "'");
}

std::string TopologyKind::str() const {
    switch (family) {
        case TopologyFamily::wide: return "wide:" + std::to_string(width);
        case TopologyFamily::layered: return "layered:" + std::to_string(depth);
        case TopologyFamily::criss_cross: return "crisscross:" + std::to_string(width);
        case TopologyFamily::wide_layered:
            return "wide+layered:" + std::to_string(width) + "x" + std::to_string(depth);
    }
    throw std::logic_error("unknown topology family");
}

ConnectivityMatrix::ConnectivityMatrix(int n_reservoirs) : n_(n_reservoirs) {
    if (n_ < 1) throw std::invalid_argument("connectivity needs at least one reservoir");
    e_.assign(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0);
}

void ConnectivityMatrix::check_source(int s, const char* who) const {
    if (s < 0 || s > n_) throw std::out_of_range(std::string(who) + ": source index");
}

void ConnectivityMatrix::check_reservoir(int r, const char* who) const {
    if (r < 1 || r > n_) throw std::out_of_range(std::string(who) + ": reservoir index");
}

bool ConnectivityMatrix::edge(int src, int dst) const {
    check_source(src, "edge");
    check_reservoir(dst, "edge");
    return e_[static_cast<std::size_t>(src) * (n_ + 1) + dst] != 0;
}

void ConnectivityMatrix::add_edge(int src, int dst) {
    check_source(src, "add_edge");
    check_reservoir(dst, "add_edge");
    if (src != input_source && src >= dst)
        throw std::invalid_argument("add_edge: reservoir edges must go to a higher index");
    e_[static_cast<std::size_t>(src) * (n_ + 1) + dst] = 1;
}

int ConnectivityMatrix::fan(int src) const {
    check_source(src, "fan");
    int count = 0;
    for (int dst = 1; dst <= n_; ++dst)
        count += e_[static_cast<std::size_t>(src) * (n_ + 1) + dst];
    return count;
}

int ConnectivityMatrix::fan_in(int dst) const {
    check_reservoir(dst, "fan_in");
    int count = 0;
    for (int src = 0; src < dst; ++src)
        count += e_[static_cast<std::size_t>(src) * (n_ + 1) + dst];
    return count;
}

std::vector<int> ConnectivityMatrix::predecessors(int l) const {
    check_reservoir(l, "predecessors");
    std::vector<int> preds;
    for (int src = 0; src < l; ++src)
        if (e_[static_cast<std::size_t>(src) * (n_ + 1) + l]) preds.push_back(src);
    return preds;
}

ConnectivityMatrix build_connectivity(const TopologyKind& kind) {
    const int n = kind.reservoir_count();
    ConnectivityMatrix c(n);
    switch (kind.family) {
        case TopologyFamily::wide:
            for (int r = 1; r <= n; ++r) c.add_edge(ConnectivityMatrix::input_source, r);
            break;
        case TopologyFamily::layered:
            c.add_edge(ConnectivityMatrix::input_source, 1);
            for (int r = 1; r < n; ++r) c.add_edge(r, r + 1);
            break;
        case TopologyFamily::criss_cross: {
            // Columns of size n, column-major; every column feeds the next densely.
            const int cols = kind.width, size = kind.width;
            for (int j = 1; j <= size; ++j) c.add_edge(ConnectivityMatrix::input_source, j);
            for (int k = 0; k + 1 < cols; ++k)
                for (int a = 1; a <= size; ++a)
                    for (int b = 1; b <= size; ++b)
                        c.add_edge(k * size + a, (k + 1) * size + b);
            break;
        }
        case TopologyFamily::wide_layered: {
            // width independent chains, laid out one depth level at a time.
            const int w = kind.width, d = kind.depth;
            for (int i = 1; i <= w; ++i) c.add_edge(ConnectivityMatrix::input_source, i);
            for (int k = 0; k + 1 < d; ++k)
                for (int i = 1; i <= w; ++i) c.add_edge(k * w + i, (k + 1) * w + i);
            break;
        }
    }
    return c;
}

}  // namespace esn
