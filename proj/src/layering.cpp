#include "mbqc/layering.hpp"

#include <algorithm>

namespace mbqc {

namespace {

bool intersects(const std::vector<QubitId>& a, const std::vector<QubitId>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

Layering assemble(std::vector<int> layer_of) {
    Layering out;
    out.layer_of = std::move(layer_of);
    int depth = 0;
    for (int l : out.layer_of) depth = std::max(depth, l);
    out.layers.resize(static_cast<std::size_t>(depth));
    for (std::size_t i = 0; i < out.layer_of.size(); ++i)
        out.layers[static_cast<std::size_t>(out.layer_of[i] - 1)].push_back(i);
    return out;
}

} // namespace

Layering layer_by_dependency(const std::vector<DependencyFootprint>& items) {
    const std::size_t n = items.size();
    std::vector<int> layer(n, 1);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < v; ++u) {
            const bool wire_conflict = intersects(items[u].acted, items[v].acted);
            const bool outcome_read =
                items[u].measures >= 0 && contains(items[v].reads, items[u].measures);
            if (wire_conflict || outcome_read) layer[v] = std::max(layer[v], layer[u] + 1);
        }
    }
    return assemble(std::move(layer));
}

Layering layer_by_domain_overlap(const std::vector<std::vector<QubitId>>& domains) {
    const std::size_t n = domains.size();
    std::vector<int> layer(n, 1);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < v; ++u)
            if (intersects(domains[u], domains[v])) layer[v] = std::max(layer[v], layer[u] + 1);
    return assemble(std::move(layer));
}

} // namespace mbqc
