#include "coopcache/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coopcache {

namespace {

constexpr Level kHitLevels[] = {Level::LocalCache,        Level::PreReq,
                                Level::HomeCluster,       Level::RoutingPathLocal,
                                Level::RoutingPathPreReq, Level::RoutingPathCluster,
                                Level::Server};

double ratio(double num, std::int64_t den) { return den == 0 ? 0.0 : num / static_cast<double>(den); }

double hit_ratio_of(const MetricsAccumulator& m) {
  if (m.requests_issued == 0) return 0.0;
  return 1.0 - ratio(static_cast<double>(m.requests_failed + m.hits(Level::Server)),
                     m.requests_issued);
}

double avg_hops_of(const MetricsAccumulator& m) {
  return ratio(static_cast<double>(m.total_hops), m.requests_issued);
}

double avg_messages_of(const MetricsAccumulator& m) {
  return ratio(static_cast<double>(m.total_control_messages + m.total_data_messages +
                                   m.maintenance_messages),
               m.requests_issued);
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string encode_latency(const std::map<int, std::int64_t>& h) {
  std::string out;
  for (const auto& [hops, n] : h) {
    if (!out.empty()) out += ';';
    out += std::to_string(hops) + ":" + std::to_string(n);
  }
  return out;
}

std::map<int, std::int64_t> decode_latency(const std::string& s) {
  std::map<int, std::int64_t> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad latency bucket '" + item + "'");
    out[std::stoi(item.substr(0, colon))] = std::stoll(item.substr(colon + 1));
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> row_cells(const ReportRow& r) {
  const auto& m = r.metrics;
  std::vector<std::string> c{r.policy, std::to_string(r.seed), std::to_string(r.cache_capacity),
                             std::to_string(m.requests_issued), std::to_string(m.requests_failed)};
  for (Level l : kHitLevels) c.push_back(std::to_string(m.hits(l)));
  c.push_back(std::to_string(m.total_hops));
  c.push_back(std::to_string(m.total_control_messages));
  c.push_back(std::to_string(m.total_data_messages));
  c.push_back(std::to_string(m.maintenance_messages));
  c.push_back(encode_latency(m.latency_hops));
  c.push_back(fixed(r.hit_ratio));
  c.push_back(fixed(r.avg_hops));
  c.push_back(fixed(r.avg_messages_per_request));
  return c;
}

template <typename T>
std::vector<T> typed_list(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ConfigError("field 'sweep." + field + "': expected a non-empty array");
  std::vector<T> out;
  for (const auto& e : v) {
    if constexpr (std::is_same_v<T, Policy>) {
      if (!e.is_string()) throw ConfigError("field 'sweep." + field + "': expected policy names");
      try {
        out.push_back(policy_from_string(e.get<std::string>()));
      } catch (const std::invalid_argument& ex) {
        throw ConfigError("field 'sweep." + field + "': " + ex.what());
      }
    } else {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
        throw ConfigError("field 'sweep." + field + "': expected non-negative integers, got " +
                          e.dump());
      out.push_back(e.get<T>());
    }
  }
  return out;
}

}  // namespace

ReportRow make_row(const SimConfig& cfg, const MetricsAccumulator& m) {
  ReportRow r;
  r.policy = to_string(cfg.policy);
  r.seed = cfg.seed;
  r.cache_capacity = cfg.cache_capacity;
  r.metrics = m;
  r.hit_ratio = hit_ratio_of(m);
  r.avg_hops = avg_hops_of(m);
  r.avg_messages_per_request = avg_messages_of(m);
  return r;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"policy", "seed", "cache_capacity", "requests_issued",
                               "requests_failed"};
    for (Level l : kHitLevels) c.push_back("hits_" + to_string(l));
    for (const char* s : {"total_hops", "total_control_messages", "total_data_messages",
                          "maintenance_messages", "latency_hops", "hit_ratio", "avg_hops",
                          "avg_messages_per_request"})
      c.emplace_back(s);
    return c;
  }();
  return cols;
}

void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    const auto cells = row_cells(r);
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }
}

std::vector<ReportRow> read_report_csv(std::istream& is) {
  const auto& cols = report_columns();
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("report: empty file");
  if (split(line) != cols) throw std::runtime_error("report: header does not match the fixed column order");

  std::vector<ReportRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != cols.size())
      throw std::runtime_error("report line " + std::to_string(lineno) + ": expected " +
                               std::to_string(cols.size()) + " columns, got " +
                               std::to_string(c.size()));
    std::size_t k = 0;
    try {
      ReportRow r;
      auto& m = r.metrics;
      r.policy = c[k++];
      r.seed = std::stoull(c[k++]);
      r.cache_capacity = std::stoll(c[k++]);
      m.requests_issued = std::stoll(c[k++]);
      m.requests_failed = std::stoll(c[k++]);
      for (Level l : kHitLevels) {
        const auto n = std::stoll(c[k++]);
        if (n != 0) m.hits_by_level[l] = n;
      }
      m.total_hops = std::stoll(c[k++]);
      m.total_control_messages = std::stoll(c[k++]);
      m.total_data_messages = std::stoll(c[k++]);
      m.maintenance_messages = std::stoll(c[k++]);
      m.latency_hops = decode_latency(c[k++]);
      r.hit_ratio = std::stod(c[k++]);
      r.avg_hops = std::stod(c[k++]);
      r.avg_messages_per_request = std::stod(c[k++]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("report line " + std::to_string(lineno) + ": bad value in column '" +
                               cols[k - 1] + "'");
    }
  }
  return rows;
}

nlohmann::ordered_json report_summary(const std::vector<ReportRow>& rows) {
  const auto& cols = report_columns();
  nlohmann::ordered_json out;
  out["columns"] = cols;
  out["runs"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    nlohmann::ordered_json j;
    j["policy"] = r.policy;
    j["seed"] = r.seed;
    j["cache_capacity"] = r.cache_capacity;
    j["requests_issued"] = m.requests_issued;
    j["requests_failed"] = m.requests_failed;
    for (Level l : kHitLevels) j["hits_" + to_string(l)] = m.hits(l);
    j["total_hops"] = m.total_hops;
    j["total_control_messages"] = m.total_control_messages;
    j["total_data_messages"] = m.total_data_messages;
    j["maintenance_messages"] = m.maintenance_messages;
    nlohmann::ordered_json lat = nlohmann::ordered_json::object();
    for (const auto& [hops, n] : m.latency_hops) lat[std::to_string(hops)] = n;
    j["latency_hops"] = lat;
    j["hit_ratio"] = r.hit_ratio;
    j["avg_hops"] = r.avg_hops;
    j["avg_messages_per_request"] = r.avg_messages_per_request;
    out["runs"].push_back(std::move(j));
  }
  return out;
}

std::vector<std::string> validate_report(const std::vector<ReportRow>& rows) {
  std::vector<std::string> out;
  constexpr double tol = 1e-6;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string who = "row " + std::to_string(i + 1) + " (" + r.policy + ", seed " +
                            std::to_string(r.seed) + ")";
    if (!r.metrics.conserved()) out.push_back(who + ": hits + failed != issued");
    if (r.metrics.total_hops != r.metrics.total_control_messages + r.metrics.total_data_messages)
      out.push_back(who + ": total_hops != control + data");
    if (std::abs(r.hit_ratio - hit_ratio_of(r.metrics)) > tol)
      out.push_back(who + ": hit_ratio disagrees with its counts");
    if (std::abs(r.avg_hops - avg_hops_of(r.metrics)) > tol)
      out.push_back(who + ": avg_hops disagrees with its counts");
    if (std::abs(r.avg_messages_per_request - avg_messages_of(r.metrics)) > tol)
      out.push_back(who + ": avg_messages_per_request disagrees with its counts");
  }
  return out;
}

std::vector<SimConfig> ScenarioFile::expand() const {
  std::vector<SimConfig> out;
  for (Policy p : policies)
    for (std::uint64_t s : seeds)
      for (Capacity c : capacities) {
        SimConfig cfg = base;
        cfg.policy = p;
        cfg.seed = s;
        cfg.cache_capacity = c;
        out.push_back(cfg);
      }
  return out;
}

ScenarioFile scenario_from_json(const nlohmann::json& j) {
  ScenarioFile s;
  s.base = config_from_json(j, {"sweep"});
  s.policies = {s.base.policy};
  s.seeds = {s.base.seed};
  s.capacities = {s.base.cache_capacity};
  if (j.contains("sweep")) {
    const auto& sw = j.at("sweep");
    if (!sw.is_object()) throw ConfigError("field 'sweep': expected an object");
    for (const auto& [key, v] : sw.items()) {
      if (key == "policy")
        s.policies = typed_list<Policy>(v, key);
      else if (key == "seed")
        s.seeds = typed_list<std::uint64_t>(v, key);
      else if (key == "cache_capacity")
        s.capacities = typed_list<Capacity>(v, key);
      else
        throw ConfigError("field 'sweep." + key + "': unknown sweep axis");
    }
  }
  for (const auto& cfg : s.expand()) {
    const auto v = validate_config(cfg);
    if (!v.empty())
      throw ConfigError("run (" + to_string(cfg.policy) + ", seed " + std::to_string(cfg.seed) +
                        ", cache_capacity " + std::to_string(cfg.cache_capacity) + "): " +
                        v.front());
  }
  return s;
}

Comparison compare_report(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw std::runtime_error("compare: report has no rows");
  using Key = std::pair<std::uint64_t, Capacity>;
  std::vector<std::string> order;
  std::map<std::string, std::map<Key, const ReportRow*>> by_policy;
  for (const auto& r : rows) {
    if (!by_policy.contains(r.policy)) order.push_back(r.policy);
    auto& slot = by_policy[r.policy][{r.seed, r.cache_capacity}];
    if (slot != nullptr)
      throw std::runtime_error("compare: duplicate row for " + r.policy + " seed " +
                               std::to_string(r.seed) + " cache_capacity " +
                               std::to_string(r.cache_capacity));
    slot = &r;
  }

  Comparison c;
  c.baseline = order.front();
  const auto& base = by_policy[c.baseline];

  std::set<Key> all;
  for (const auto& [p, runs] : by_policy)
    for (const auto& [k, _] : runs) all.insert(k);
  std::vector<std::string> missing;
  for (const auto& p : order)
    for (const auto& k : all)
      if (!by_policy[p].contains(k))
        missing.push_back(p + " seed " + std::to_string(k.first) + " cache_capacity " +
                          std::to_string(k.second));
  if (!missing.empty()) {
    std::string msg = "compare: unpaired runs, missing:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw std::runtime_error(msg);
  }

  for (const auto& p : order) {
    PolicySummary s;
    s.policy = p;
    for (const auto& [k, r] : by_policy[p]) {
      const ReportRow& b = *base.at(k);
      PairedDelta d{p, k.first, k.second, r->hit_ratio - b.hit_ratio, r->avg_hops - b.avg_hops,
                    r->avg_messages_per_request - b.avg_messages_per_request};
      ++s.pairs;
      s.mean_hit_ratio += r->hit_ratio;
      s.mean_avg_hops += r->avg_hops;
      s.mean_avg_messages += r->avg_messages_per_request;
      s.mean_d_hit_ratio += d.d_hit_ratio;
      s.mean_d_avg_hops += d.d_avg_hops;
      s.mean_d_avg_messages += d.d_avg_messages;
      c.deltas.push_back(d);
    }
    const auto n = static_cast<double>(s.pairs);
    for (double* v : {&s.mean_hit_ratio, &s.mean_avg_hops, &s.mean_avg_messages,
                      &s.mean_d_hit_ratio, &s.mean_d_avg_hops, &s.mean_d_avg_messages})
      *v /= n;
    c.summary.push_back(s);
  }
  return c;
}

void print_comparison(std::ostream& os, const Comparison& c) {
  char buf[256];
  os << "baseline: " << c.baseline << "\n\nper-pair deltas vs baseline\n";
  std::snprintf(buf, sizeof buf, "%-10s %8s %8s %12s %12s %12s\n", "policy", "seed", "capacity",
                "d_hit_ratio", "d_avg_hops", "d_avg_msgs");
  os << buf;
  for (const auto& d : c.deltas) {
    std::snprintf(buf, sizeof buf, "%-10s %8llu %8lld %12.6f %12.6f %12.6f\n", d.policy.c_str(),
                  static_cast<unsigned long long>(d.seed), static_cast<long long>(d.cache_capacity),
                  d.d_hit_ratio, d.d_avg_hops, d.d_avg_messages);
    os << buf;
  }
  os << "\nsummary (means across pairs)\n";
  std::snprintf(buf, sizeof buf, "%-10s %6s %10s %10s %10s %12s %12s %12s\n", "policy", "pairs",
                "hit_ratio", "avg_hops", "avg_msgs", "d_hit_ratio", "d_avg_hops", "d_avg_msgs");
  os << buf;
  for (const auto& s : c.summary) {
    std::snprintf(buf, sizeof buf, "%-10s %6zu %10.6f %10.6f %10.6f %12.6f %12.6f %12.6f\n",
                  s.policy.c_str(), s.pairs, s.mean_hit_ratio, s.mean_avg_hops,
                  s.mean_avg_messages, s.mean_d_hit_ratio, s.mean_d_avg_hops,
                  s.mean_d_avg_messages);
    os << buf;
  }
}

}  // namespace coopcache
