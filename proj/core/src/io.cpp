#include "kelly/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kelly::io {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value,
                                    std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char hex[8];
          std::snprintf(hex, sizeof(hex), "\\u%04x", c);
          out += hex;
        } else {
          out += c;
        }
    }
  }
  return out;
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& origin) {
  for (const auto& item : j.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      fail(origin, "unknown key '" + item.key() + "'");
    }
  }
}

double get_number(const json& j, const char* key, const std::string& origin) {
  if (!j.at(key).is_number()) {
    fail(origin, std::string("field '") + key + "': expected a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

SimulationConfig parse_config(const std::string& json_text,
                              const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(origin, e.what());
  }
  if (!j.is_object()) fail(origin, "top level must be a JSON object");

  reject_unknown_keys(j,
                      {"n_agents", "horizon", "true_prob", "seed",
                       "belief_init", "lambda_init", "learners_enabled",
                       "output_gamma"},
                      origin);
  for (const char* key : {"n_agents", "horizon", "true_prob", "seed"}) {
    if (!j.contains(key)) {
      fail(origin, std::string("missing required field '") + key + "'");
    }
  }

  SimulationConfig cfg;
  if (!j["n_agents"].is_number_integer()) {
    fail(origin, "field 'n_agents': expected an integer");
  }
  cfg.n_agents = j["n_agents"].get<int>();
  if (!j["horizon"].is_number_integer()) {
    fail(origin, "field 'horizon': expected an integer");
  }
  cfg.horizon = j["horizon"].get<int>();
  cfg.true_prob = get_number(j, "true_prob", origin);
  if (!j["seed"].is_number_unsigned()) {
    fail(origin, "field 'seed': expected a nonnegative integer");
  }
  cfg.seed = j["seed"].get<std::uint64_t>();

  if (j.contains("belief_init")) {
    if (!j["belief_init"].is_string()) {
      fail(origin, "field 'belief_init': expected a string");
    }
    const std::string init = j["belief_init"].get<std::string>();
    if (init == "uniform_random") {
      cfg.belief_init = BeliefInit::uniform_random;
    } else if (init == "uniform_grid") {
      cfg.belief_init = BeliefInit::uniform_grid;
    } else {
      fail(origin, "field 'belief_init': must be 'uniform_random' or "
                   "'uniform_grid', got '" + init + "'");
    }
  }

  if (j.contains("learners_enabled")) {
    if (!j["learners_enabled"].is_boolean()) {
      fail(origin, "field 'learners_enabled': expected a boolean");
    }
    cfg.learners_enabled = j["learners_enabled"].get<bool>();
  }

  if (j.contains("lambda_init")) {
    const json& lambda = j["lambda_init"];
    if (lambda.is_array()) {
      for (const auto& entry : lambda) {
        if (!entry.is_number()) {
          fail(origin, "field 'lambda_init': array entries must be numbers");
        }
        cfg.lambda_per_agent.push_back(entry.get<double>());
      }
    } else if (lambda.is_number()) {
      cfg.lambda_init = lambda.get<double>();
    } else {
      fail(origin, "field 'lambda_init': expected a number or an array");
    }
  } else {
    cfg.lambda_init = cfg.learners_enabled ? 0.5 : 1.0;
  }

  if (j.contains("output_gamma")) {
    cfg.output_gamma = get_number(j, "output_gamma", origin);
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
  return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string() + ": cannot open config file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

namespace {

const char* belief_init_name(BeliefInit init) {
  return init == BeliefInit::uniform_random ? "uniform_random"
                                            : "uniform_grid";
}

void append_config(std::string& out, const SimulationConfig& cfg) {
  out += "{\"n_agents\":" + std::to_string(cfg.n_agents);
  out += ",\"horizon\":" + std::to_string(cfg.horizon);
  out += ",\"true_prob\":" + format_double(cfg.true_prob);
  out += ",\"seed\":" + std::to_string(cfg.seed);
  out += ",\"belief_init\":\"";
  out += belief_init_name(cfg.belief_init);
  out += "\",\"lambda_init\":";
  if (cfg.lambda_per_agent.empty()) {
    out += format_double(cfg.lambda_init);
  } else {
    out += '[';
    for (std::size_t i = 0; i < cfg.lambda_per_agent.size(); ++i) {
      if (i) out += ',';
      out += format_double(cfg.lambda_per_agent[i]);
    }
    out += ']';
  }
  out += ",\"learners_enabled\":";
  out += cfg.learners_enabled ? "true" : "false";
  out += ",\"output_gamma\":" + format_double(cfg.output_gamma);
  out += '}';
}

void append_agent(std::string& out, const AgentState& agent) {
  out += "{\"id\":" + std::to_string(agent.id);
  out += ",\"belief\":" + format_double(agent.belief.value());
  out += ",\"wealth\":" + format_double(agent.wealth);
  out += ",\"lambda\":" + format_double(agent.lambda);
  if (agent.learner) {
    out += ",\"learner\":{\"weight_self\":";
    out += format_double(agent.learner->weight_self);
    out += ",\"weight_market\":" + format_double(agent.learner->weight_market);
    out += ",\"log_rescale\":" + format_double(agent.learner->log_rescale);
    out += '}';
  }
  out += '}';
}

void append_agents(std::string& out, const std::vector<AgentState>& agents) {
  out += '[';
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (i) out += ',';
    append_agent(out, agents[i]);
  }
  out += ']';
}

AgentState parse_agent(const json& j) {
  AgentState agent{j.at("id").get<int>(),
                   Probability(j.at("belief").get<double>()),
                   j.at("wealth").get<double>(),
                   j.at("lambda").get<double>(),
                   std::nullopt};
  if (j.contains("learner")) {
    const json& learner = j.at("learner");
    agent.learner =
        LambdaLearnerState{learner.at("weight_self").get<double>(),
                           learner.at("weight_market").get<double>(),
                           learner.at("log_rescale").get<double>()};
  }
  return agent;
}

SimulationConfig parse_record_config(const json& j) {
  SimulationConfig cfg;
  cfg.n_agents = j.at("n_agents").get<int>();
  cfg.horizon = j.at("horizon").get<int>();
  cfg.true_prob = j.at("true_prob").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  const std::string init = j.at("belief_init").get<std::string>();
  cfg.belief_init = init == "uniform_grid" ? BeliefInit::uniform_grid
                                           : BeliefInit::uniform_random;
  const json& lambda = j.at("lambda_init");
  if (lambda.is_array()) {
    cfg.lambda_per_agent = lambda.get<std::vector<double>>();
  } else {
    cfg.lambda_init = lambda.get<double>();
  }
  cfg.learners_enabled = j.at("learners_enabled").get<bool>();
  cfg.output_gamma = j.at("output_gamma").get<double>();
  return cfg;
}

constexpr char kRecordFormat[] = "kelly-markets/record/v1";

}  // namespace

std::string record_to_json(const SimulationRecord& rec) {
  std::string out;
  out.reserve(256 + rec.rounds.size() * (64 * (rec.initial_agents.size() + 4)));
  out += "{\"format\":\"";
  out += kRecordFormat;
  out += "\",\"rng_algorithm\":\"" + json_escape(rec.rng_algorithm);
  out += "\",\"config\":";
  append_config(out, rec.config);
  out += ",\"initial_agents\":";
  append_agents(out, rec.initial_agents);
  out += ",\"rounds\":[";
  for (std::size_t t = 0; t < rec.rounds.size(); ++t) {
    const MarketRound& round = rec.rounds[t];
    if (t) out += ',';
    out += "{\"price\":" + format_double(round.price.value());
    out += ",\"outcome\":" + std::to_string(round.outcome);
    out += ",\"orders\":[";
    for (std::size_t i = 0; i < round.orders.size(); ++i) {
      if (i) out += ',';
      out += "{\"agent_id\":" + std::to_string(round.orders[i].agent_id);
      out += ",\"shares\":" + format_double(round.orders[i].shares);
      out += ",\"stake\":" + format_double(round.orders[i].stake);
      out += '}';
    }
    out += "],\"wealth_after\":[";
    for (std::size_t i = 0; i < round.wealth_after.size(); ++i) {
      if (i) out += ',';
      out += format_double(round.wealth_after[i]);
    }
    out += "]}";
  }
  out += "],\"final_agents\":";
  append_agents(out, rec.final_population.agents);
  out += ",\"ledger\":{\"market_loss\":" + format_double(rec.ledger.market_loss);
  out += ",\"agent_losses\":[";
  for (std::size_t i = 0; i < rec.ledger.agent_losses.size(); ++i) {
    if (i) out += ',';
    out += format_double(rec.ledger.agent_losses[i]);
  }
  out += "],\"rounds\":" + std::to_string(rec.ledger.rounds);
  out += "}}";
  return out;
}

SimulationRecord parse_record(const std::string& json_text) {
  const json j = json::parse(json_text);
  if (!j.contains("format") || j["format"].get<std::string>() != kRecordFormat) {
    throw std::invalid_argument("record: unrecognized format tag");
  }
  SimulationRecord rec;
  rec.rng_algorithm = j.at("rng_algorithm").get<std::string>();
  rec.config = parse_record_config(j.at("config"));
  for (const auto& agent : j.at("initial_agents")) {
    rec.initial_agents.push_back(parse_agent(agent));
  }
  for (const auto& round_json : j.at("rounds")) {
    MarketRound round{Probability(round_json.at("price").get<double>()),
                      {},
                      round_json.at("outcome").get<int>(),
                      round_json.at("wealth_after").get<std::vector<double>>()};
    for (const auto& order : round_json.at("orders")) {
      round.orders.push_back(Order{order.at("agent_id").get<int>(),
                                   order.at("shares").get<double>(),
                                   order.at("stake").get<double>()});
    }
    rec.rounds.push_back(std::move(round));
  }
  for (const auto& agent : j.at("final_agents")) {
    rec.final_population.agents.push_back(parse_agent(agent));
  }
  const json& ledger = j.at("ledger");
  rec.ledger.market_loss = ledger.at("market_loss").get<double>();
  rec.ledger.agent_losses = ledger.at("agent_losses").get<std::vector<double>>();
  rec.ledger.rounds = ledger.at("rounds").get<int>();
  return rec;
}

void save_record(const SimulationRecord& rec,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path.string() + ": cannot open for writing");
  }
  out << record_to_json(rec) << '\n';
}

SimulationRecord load_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path.string() + ": cannot open record file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_record(buffer.str());
}

void write_rounds_csv(std::ostream& out, const SimulationRecord& rec) {
  out << "t,price,outcome,observed_freq,discounted_freq\n";
  if (rec.rounds.empty()) return;
  std::vector<int> outcomes;
  outcomes.reserve(rec.rounds.size());
  for (const auto& round : rec.rounds) outcomes.push_back(round.outcome);
  const FrequencySeries series =
      discounted_frequency(outcomes, rec.config.output_gamma);
  for (std::size_t t = 0; t < rec.rounds.size(); ++t) {
    out << (t + 1) << ',' << format_double(rec.rounds[t].price.value()) << ','
        << rec.rounds[t].outcome << ',' << format_double(series.observed[t])
        << ',' << format_double(series.discounted[t]) << '\n';
  }
}

void write_wealth_csv(std::ostream& out, const SimulationRecord& rec) {
  out << "agent_id,belief,lambda,wealth_final\n";
  for (const auto& agent : rec.final_population.agents) {
    out << agent.id << ',' << format_double(agent.belief.value()) << ','
        << format_double(agent.effective_lambda()) << ','
        << format_double(agent.wealth) << '\n';
  }
}

void write_gamma_fit_csv(std::ostream& out, const GammaFit& fit) {
  out << "gamma,rmse\n";
  for (const auto& [gamma, rmse] : fit.rmse_curve) {
    out << format_double(gamma) << ',' << format_double(rmse) << '\n';
  }
}

std::string verify_report_to_json(const VerifyReport& report) {
  std::string out = "{\"checks\":[";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const VerifyCheck& check = report.checks[i];
    if (i) out += ',';
    out += "{\"name\":\"" + json_escape(check.name);
    out += "\",\"residual\":" + format_double(check.residual);
    out += ",\"threshold\":" + format_double(check.threshold);
    out += ",\"pass\":";
    out += check.pass ? "true" : "false";
    out += ",\"informational\":";
    out += check.informational ? "true" : "false";
    out += '}';
  }
  out += "],\"all_pass\":";
  out += report.all_pass ? "true" : "false";
  out += '}';
  return out;
}

std::string manifest_to_json(const RunManifest& manifest) {
  std::string out = "{\"config_path\":\"" + json_escape(manifest.config_path);
  out += "\",\"output_dir\":\"" + json_escape(manifest.output_dir);
  out += "\",\"emitted_files\":[";
  for (std::size_t i = 0; i < manifest.emitted_files.size(); ++i) {
    if (i) out += ',';
    out += '"' + json_escape(manifest.emitted_files[i]) + '"';
  }
  out += "],\"tool_version\":\"" + json_escape(manifest.tool_version);
  out += "\",\"wall_seconds\":" + format_double(manifest.wall_seconds);
  out += '}';
  return out;
}

std::string config_to_json(const SimulationConfig& cfg) {
  std::string out;
  append_config(out, cfg);
  return out;
}

}  // namespace kelly::io
