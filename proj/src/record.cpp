#include "leadel/record.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

namespace leadel {

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) throw std::logic_error("non-finite value in record");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

nlohmann::json stats_json(const Stats& s) {
  return {{"mean", s.mean},     {"variance", s.variance}, {"min", s.min},
          {"max", s.max},       {"median", s.median},     {"q90", s.q90}};
}

Stats stats_from(const nlohmann::json& j) {
  Stats s;
  s.mean = j.at("mean");
  s.variance = j.at("variance");
  s.min = j.at("min");
  s.max = j.at("max");
  s.median = j.at("median");
  s.q90 = j.at("q90");
  return s;
}

}  // namespace

std::string csv_header() {
  return "n,alpha,k0,algo,trials,seed,mean_rounds,mean_slots,mean_max_awake,"
         "p_star_used,j_star,rounds_bound,time_bound,nonterminated";
}

std::string csv_row(const ExperimentRecord& rec) {
  const auto& c = rec.config;
  std::string row;
  row += std::to_string(c.params.n) + ',';
  row += fmt(c.params.alpha) + ',';
  row += std::to_string(c.params.k0) + ',';
  row += (c.protocol == ProtocolKind::Alg1Strong ? "1," : "2,");
  row += std::to_string(c.trials) + ',';
  row += std::to_string(c.seed) + ',';
  row += fmt(rec.summary.rounds.mean) + ',';
  row += fmt(rec.summary.slots.mean) + ',';
  row += fmt(rec.summary.max_awake.mean) + ',';
  row += fmt(rec.bounds.p_star) + ',';
  row += std::to_string(rec.bounds.j_star) + ',';
  row += fmt(rec.bounds.rounds_bound) + ',';
  row += fmt(rec.bounds.time_bound) + ',';
  row += std::to_string(rec.summary.nonterminated);
  return row;
}

std::string json_record(const ExperimentRecord& rec) {
  const auto& c = rec.config;
  nlohmann::json j{
      {"config",
       {{"n", c.params.n},
        {"alpha", c.params.alpha},
        {"k0", c.params.k0},
        {"algo", c.protocol == ProtocolKind::Alg1Strong ? 1 : 2},
        {"trials", c.trials},
        {"seed", c.seed},
        {"max_rounds", c.max_rounds}}},
      {"summary",
       {{"trials", rec.summary.trials},
        {"nonterminated", rec.summary.nonterminated},
        {"rounds", stats_json(rec.summary.rounds)},
        {"slots", stats_json(rec.summary.slots)},
        {"max_awake", stats_json(rec.summary.max_awake)},
        {"mean_awake_per_station", rec.summary.mean_awake_per_station},
        {"rounds_cdf", rec.summary.rounds_cdf}}},
      {"theory",
       {{"j_star", rec.bounds.j_star},
        {"p_star", rec.bounds.p_star},
        {"alpha_sup", rec.bounds.alpha_sup},
        {"c_value", rec.bounds.c_value},
        {"rounds_bound", rec.bounds.rounds_bound},
        {"time_bound", rec.bounds.time_bound},
        {"awake_coeff", rec.bounds.awake_coeff}}},
      {"timestamp", rec.timestamp},
      {"version", rec.version}};
  return j.dump();
}

ExperimentRecord parse_json_record(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  ExperimentRecord rec;
  const auto& jc = j.at("config");
  rec.config.params.n = jc.at("n");
  rec.config.params.alpha = jc.at("alpha");
  rec.config.params.k0 = jc.at("k0");
  rec.config.protocol = jc.at("algo") == 1 ? ProtocolKind::Alg1Strong
                                           : ProtocolKind::Alg2Weak;
  rec.config.trials = jc.at("trials");
  rec.config.seed = jc.at("seed");
  rec.config.max_rounds = jc.at("max_rounds");
  const auto& js = j.at("summary");
  rec.summary.trials = js.at("trials");
  rec.summary.nonterminated = js.at("nonterminated");
  rec.summary.rounds = stats_from(js.at("rounds"));
  rec.summary.slots = stats_from(js.at("slots"));
  rec.summary.max_awake = stats_from(js.at("max_awake"));
  rec.summary.mean_awake_per_station = js.at("mean_awake_per_station");
  rec.summary.rounds_cdf = js.at("rounds_cdf").get<std::vector<double>>();
  const auto& jt = j.at("theory");
  rec.bounds.j_star = jt.at("j_star");
  rec.bounds.p_star = jt.at("p_star");
  rec.bounds.alpha_sup = jt.at("alpha_sup");
  rec.bounds.c_value = jt.at("c_value");
  rec.bounds.rounds_bound = jt.at("rounds_bound");
  rec.bounds.time_bound = jt.at("time_bound");
  rec.bounds.awake_coeff = jt.at("awake_coeff");
  rec.timestamp = j.at("timestamp");
  rec.version = j.at("version");
  return rec;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace leadel
