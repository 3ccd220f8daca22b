#include "glsn/oracle.hpp"

#include <set>

#include "glsn/error.hpp"

namespace glsn {

namespace {

using Path = std::vector<NodeId>;

void extend(const Glsn& g, NodeId target, std::size_t length, Path& path,
            std::vector<bool>& on_path, std::vector<Path>& found) {
  const NodeId last = path.back();
  if (path.size() == length + 1) {
    if (last == target) found.push_back(path);
    return;
  }
  if (last == target) return;
  for (NodeId next = 0; next < g.node_count(); ++next) {
    if (on_path[next] || !g.weight(last, next)) continue;
    on_path[next] = true;
    path.push_back(next);
    extend(g, target, length, path, on_path, found);
    path.pop_back();
    on_path[next] = false;
  }
}

// Component label per node via union-find over the edge list.
std::vector<NodeId> components(const Glsn& g) {
  std::vector<NodeId> parent(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) parent[v] = v;
  const auto root = [&](NodeId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges()) parent[root(e.u)] = root(e.v);
  for (NodeId v = 0; v < g.node_count(); ++v) parent[v] = root(v);
  return parent;
}

// All shortest s-t paths, found as the simple paths of the smallest length
// for which any exists. Empty when disconnected.
std::vector<Path> all_shortest_paths(const Glsn& g, const std::vector<NodeId>& component,
                                     NodeId s, NodeId t) {
  std::vector<Path> found;
  if (component[s] != component[t]) return found;
  for (std::size_t length = 1; length < g.node_count(); ++length) {
    Path path{s};
    std::vector<bool> on_path(g.node_count(), false);
    on_path[s] = true;
    extend(g, t, length, path, on_path, found);
    if (!found.empty()) break;
  }
  return found;
}

}  // namespace

std::vector<double> brute_force_oracle(const Glsn& g, OracleMode mode, int l_max) {
  if (g.node_count() > kOracleMaxNodes) {
    throw Error("brute-force oracle refuses graphs with more than " +
                std::to_string(kOracleMaxNodes) + " nodes");
  }
  const std::size_t n = g.node_count();
  const auto component = components(g);
  if (mode == OracleMode::FreemanBetweenness) {
    std::vector<double> b(n, 0.0);
    for (NodeId s = 0; s < n; ++s) {
      for (NodeId t = s + 1; t < n; ++t) {
        const auto paths = all_shortest_paths(g, component, s, t);
        if (paths.empty()) continue;
        for (NodeId i = 0; i < n; ++i) {
          if (i == s || i == t) continue;
          std::size_t through = 0;
          for (const auto& p : paths) {
            for (std::size_t k = 1; k + 1 < p.size(); ++k) {
              if (p[k] == i) ++through;
            }
          }
          b[i] += static_cast<double>(through) / static_cast<double>(paths.size());
        }
      }
    }
    return b;
  }

  if (l_max < 1) throw Error("GLSN betweenness oracle needs l_max >= 1");
  std::vector<double> gb(g.country_count(), 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      const CountryId cs = g.country_of(s);
      const CountryId ct = g.country_of(t);
      if (cs == ct) continue;
      std::vector<Path> valid;
      for (const auto& p : all_shortest_paths(g, component, s, t)) {
        if (static_cast<int>(p.size()) - 1 > l_max) continue;
        bool ok = true;
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
          const CountryId c = g.country_of(p[k]);
          if (c == cs || c == ct) ok = false;
        }
        if (ok) valid.push_back(p);
      }
      if (valid.empty()) continue;
      for (CountryId i = 0; i < g.country_count(); ++i) {
        std::size_t delta = 0;
        for (const auto& p : valid) {
          std::set<CountryId> inside;
          for (std::size_t k = 1; k + 1 < p.size(); ++k) inside.insert(g.country_of(p[k]));
          if (inside.contains(i)) ++delta;
        }
        gb[i] += static_cast<double>(delta) / static_cast<double>(valid.size());
      }
    }
  }
  return gb;
}

}  // namespace glsn
