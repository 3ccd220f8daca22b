#include "glsn/indices.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "glsn/error.hpp"
#include "glsn/format.hpp"
#include "glsn/parallel.hpp"
#include "glsn/summation.hpp"

namespace glsn {

namespace {

// Sources are grouped into fixed-size blocks. Each block reduces its sources
// in order and blocks are merged in order, so results do not depend on the
// worker count.
constexpr std::size_t kSourceBlock = 32;

// Breadth-first shortest-path DAG from one source, truncated at max_depth.
struct ShortestPathDag {
  std::vector<int> dist;
  std::vector<NodeId> order;  // nodes in nondecreasing distance
  std::vector<std::vector<NodeId>> preds;

  explicit ShortestPathDag(std::size_t n) : dist(n, -1), preds(n) {}

  void run(const Glsn& g, NodeId source, int max_depth) {
    for (const NodeId v : order) {
      dist[v] = -1;
      preds[v].clear();
    }
    order.clear();
    dist[source] = 0;
    order.push_back(source);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId v = order[head];
      if (dist[v] >= max_depth) continue;
      for (const NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) preds[w].push_back(v);
      }
    }
  }
};

// Per-pair valid path counting on the shortest-path DAG of the source.
class ValidPathCounter {
 public:
  explicit ValidPathCounter(std::size_t n) : stamp_(n, 0), count_(n, 0.0) {}

  // Fills `by_country` with (country, delta) and returns n_st. Intermediate
  // ports must avoid the countries of s and t.
  double count(const Glsn& g, const ShortestPathDag& dag, NodeId s, NodeId t,
               std::vector<std::pair<CountryId, double>>& by_country) {
    by_country.clear();
    if (dag.dist[t] <= 0) return 0.0;
    if (dag.dist[t] == 1) return 1.0;  // the direct edge; no intermediates
    const CountryId cs = g.country_of(s);
    const CountryId ct = g.country_of(t);
    ++epoch_;

    // Intermediates that lie on some s-t shortest path through allowed ports.
    members_.clear();
    stack_.assign(1, t);
    while (!stack_.empty()) {
      const NodeId v = stack_.back();
      stack_.pop_back();
      for (const NodeId p : dag.preds[v]) {
        if (p == s || stamp_[p] == epoch_) continue;
        const CountryId cp = g.country_of(p);
        if (cp == cs || cp == ct) continue;
        stamp_[p] = epoch_;
        members_.push_back(p);
        stack_.push_back(p);
      }
    }
    if (members_.empty()) return 0.0;
    std::sort(members_.begin(), members_.end(), [&](NodeId a, NodeId b) {
      return dag.dist[a] != dag.dist[b] ? dag.dist[a] < dag.dist[b] : a < b;
    });

    const double total = paths_avoiding(g, dag, s, t, std::numeric_limits<CountryId>::max());
    if (total == 0.0) return 0.0;

    countries_.clear();
    for (const NodeId v : members_) countries_.push_back(g.country_of(v));
    std::sort(countries_.begin(), countries_.end());
    countries_.erase(std::unique(countries_.begin(), countries_.end()), countries_.end());
    for (const CountryId c : countries_) {
      const double delta = total - paths_avoiding(g, dag, s, t, c);
      if (delta > 0.0) by_country.emplace_back(c, delta);
    }
    return total;
  }

 private:
  // Paths s -> t inside the member set whose intermediates avoid `excluded`.
  double paths_avoiding(const Glsn& g, const ShortestPathDag& dag, NodeId s, NodeId t,
                        CountryId excluded) {
    const auto incoming = [&](NodeId v) {
      double sum = 0.0;
      for (const NodeId p : dag.preds[v]) {
        if (p == s) {
          sum += 1.0;
        } else if (stamp_[p] == epoch_) {
          sum += count_[p];
        }
      }
      return sum;
    };
    for (const NodeId v : members_) {
      count_[v] = g.country_of(v) == excluded ? 0.0 : incoming(v);
    }
    return incoming(t);
  }

  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<double> count_;
  std::vector<NodeId> members_;
  std::vector<NodeId> stack_;
  std::vector<CountryId> countries_;
};

}  // namespace

CountryConnectivity country_connectivity(const Glsn& g) {
  std::vector<CompensatedSum> sums(g.country_count());
  for (const auto& e : g.edges()) {
    const CountryId cu = g.country_of(e.u);
    const CountryId cv = g.country_of(e.v);
    if (cu == cv) continue;
    sums[cu] += e.weight;
    sums[cv] += e.weight;
  }
  CountryConnectivity out;
  out.gc.resize(g.country_count());
  out.gc_normalized.resize(g.country_count());
  for (CountryId c = 0; c < g.country_count(); ++c) {
    out.gc[c] = sums[c].value();
    out.gc_normalized[c] = out.gc[c] / static_cast<double>(g.port_count(c));
  }
  return out;
}

PathProfile valid_shortest_path_profile(const Glsn& g, NodeId s, NodeId t, int l_max) {
  if (s >= g.node_count() || t >= g.node_count()) throw Error("port index out of range");
  if (g.country_of(s) == g.country_of(t)) {
    throw Error("ports " + g.nodes()[s].port_id + " and " + g.nodes()[t].port_id +
                " belong to the same country");
  }
  ShortestPathDag dag(g.node_count());
  dag.run(g, s, std::numeric_limits<int>::max());
  PathProfile profile;
  profile.distance = dag.dist[t];
  if (profile.distance < 0 || profile.distance > l_max) return profile;
  ValidPathCounter counter(g.node_count());
  std::vector<std::pair<CountryId, double>> by_country;
  profile.valid_paths = counter.count(g, dag, s, t, by_country);
  for (const auto& [c, delta] : by_country) profile.by_country[c] = delta;
  return profile;
}

std::vector<std::vector<double>> glsn_betweenness(const Glsn& g, std::span<const int> l_values) {
  const std::size_t n = g.node_count();
  const std::size_t countries = g.country_count();
  int max_l = 0;
  for (const int l : l_values) {
    if (l < 1) throw Error("L_max must be >= 1");
    max_l = std::max(max_l, l);
  }
  std::vector<std::vector<double>> result(l_values.size(), std::vector<double>(countries, 0.0));
  if (n == 0 || max_l < 2) return result;

  // block_sums[block][(d - 2) * countries + c]: contribution of pairs at distance d.
  const std::size_t depth_slots = static_cast<std::size_t>(max_l - 1);
  const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
  std::vector<std::vector<double>> block_sums(blocks);
  parallel_for(blocks, [&](std::size_t block) {
    std::vector<CompensatedSum> acc(depth_slots * countries);
    ShortestPathDag dag(n);
    ValidPathCounter counter(n);
    std::vector<std::pair<CountryId, double>> by_country;
    const std::size_t begin = block * kSourceBlock;
    const std::size_t end = std::min(n, begin + kSourceBlock);
    for (std::size_t si = begin; si < end; ++si) {
      const auto s = static_cast<NodeId>(si);
      dag.run(g, s, max_l);
      for (NodeId t = s + 1; t < n; ++t) {
        const int d = dag.dist[t];
        if (d < 2 || g.country_of(t) == g.country_of(s)) continue;
        const double total = counter.count(g, dag, s, t, by_country);
        if (total == 0.0) continue;
        const std::size_t slot = static_cast<std::size_t>(d - 2) * countries;
        for (const auto& [c, delta] : by_country) acc[slot + c] += delta / total;
      }
    }
    auto& out = block_sums[block];
    out.resize(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = acc[k].value();
  });

  for (std::size_t li = 0; li < l_values.size(); ++li) {
    const auto limit = static_cast<std::size_t>(l_values[li]);
    for (std::size_t c = 0; c < countries; ++c) {
      CompensatedSum sum;
      for (std::size_t block = 0; block < blocks; ++block) {
        for (std::size_t d = 2; d <= limit; ++d) sum += block_sums[block][(d - 2) * countries + c];
      }
      result[li][c] = sum.value();
    }
  }
  return result;
}

std::vector<double> glsn_betweenness(const Glsn& g, int l_max) {
  const int values[] = {l_max};
  return std::move(glsn_betweenness(g, std::span<const int>(values)).front());
}

std::vector<double> port_betweenness(const Glsn& g) {
  const std::size_t n = g.node_count();
  const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
  std::vector<std::vector<double>> block_sums(blocks);
  parallel_for(blocks, [&](std::size_t block) {
    std::vector<CompensatedSum> acc(n);
    ShortestPathDag dag(n);
    std::vector<double> sigma(n, 0.0);
    std::vector<double> dependency(n, 0.0);
    const std::size_t begin = block * kSourceBlock;
    const std::size_t end = std::min(n, begin + kSourceBlock);
    for (std::size_t si = begin; si < end; ++si) {
      const auto s = static_cast<NodeId>(si);
      dag.run(g, s, std::numeric_limits<int>::max());
      for (const NodeId v : dag.order) {
        sigma[v] = 0.0;
        dependency[v] = 0.0;
      }
      sigma[s] = 1.0;
      for (const NodeId v : dag.order) {
        for (const NodeId p : dag.preds[v]) sigma[v] += sigma[p];
      }
      for (auto it = dag.order.rbegin(); it != dag.order.rend(); ++it) {
        const NodeId w = *it;
        for (const NodeId p : dag.preds[w]) {
          dependency[p] += sigma[p] / sigma[w] * (1.0 + dependency[w]);
        }
        if (w != s) acc[w] += dependency[w];
      }
    }
    auto& out = block_sums[block];
    out.resize(n);
    for (std::size_t v = 0; v < n; ++v) out[v] = acc[v].value();
  });

  std::vector<double> b(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    CompensatedSum sum;
    for (std::size_t block = 0; block < blocks; ++block) sum += block_sums[block][v];
    // Each unordered pair was seen from both endpoints.
    b[v] = sum.value() / 2.0;
  }
  return b;
}

CountryFreeman country_freeman(const Glsn& g, std::span<const double> port_b) {
  if (port_b.size() != g.node_count()) throw Error("port betweenness size mismatch");
  std::vector<CompensatedSum> sums(g.country_count());
  for (NodeId v = 0; v < g.node_count(); ++v) sums[g.country_of(v)] += port_b[v];
  CountryFreeman out;
  out.fb.resize(g.country_count());
  out.fb_normalized.resize(g.country_count());
  for (CountryId c = 0; c < g.country_count(); ++c) {
    out.fb[c] = sums[c].value();
    out.fb_normalized[c] = out.fb[c] / static_cast<double>(g.port_count(c));
  }
  return out;
}

const CountryIndexRow* CountryIndexTable::find(const std::string& code) const {
  const auto it = std::lower_bound(
      rows.begin(), rows.end(), code,
      [](const CountryIndexRow& row, const std::string& key) { return row.country_code < key; });
  if (it == rows.end() || it->country_code != code) return nullptr;
  return &*it;
}

CountryIndexTable compute_index_table(const Glsn& g, std::span<const CountryEcon> econ,
                                      std::span<const int> l_values) {
  const auto connectivity = country_connectivity(g);
  const auto gb = glsn_betweenness(g, l_values);
  const auto b = port_betweenness(g);
  const auto freeman = country_freeman(g, b);

  CountryIndexTable table;
  table.scheme = g.scheme();
  for (CountryId c = 0; c < g.country_count(); ++c) {
    CountryIndexRow row;
    row.country_code = g.countries()[c];
    row.port_count = g.port_count(c);
    row.gc = connectivity.gc[c];
    row.gc_normalized = connectivity.gc_normalized[c];
    for (std::size_t li = 0; li < l_values.size(); ++li) row.gb[l_values[li]] = gb[li][c];
    row.fb = freeman.fb[c];
    row.fb_normalized = freeman.fb_normalized[c];
    for (const auto& e : econ) {
      if (e.country_code == row.country_code) {
        row.lsci = e.lsci;
        break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_indices_csv(std::ostream& out, const CountryIndexTable& table) {
  out << "country_code,port_count,gc,gc_norm";
  for (const int l : kReportedLmax) out << ",gb_l" << l;
  out << ",fb,fb_norm,lsci\n";
  for (const auto& row : table.rows) {
    out << row.country_code << ',' << row.port_count << ',' << format_double(row.gc) << ','
        << format_double(row.gc_normalized);
    for (const int l : kReportedLmax) {
      const auto it = row.gb.find(l);
      out << ',' << (it == row.gb.end() ? std::string() : format_double(it->second));
    }
    out << ',' << format_double(row.fb) << ',' << format_double(row.fb_normalized) << ','
        << (row.lsci ? format_double(*row.lsci) : std::string()) << '\n';
  }
}

}  // namespace glsn
