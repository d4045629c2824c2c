#include "signvote/cli/config.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace signvote::cli {
namespace {

using nlohmann::json;

std::string join(std::string_view prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

const json& require_object(const json& node, std::string_view path) {
  if (!node.is_object()) throw ConfigError("'" + std::string(path.empty() ? "<root>" : path) + "' must be an object");
  return node;
}

void reject_unknown(const json& node, std::string_view path, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : node.items()) {
    bool ok = false;
    for (auto k : known) ok |= (k == key);
    if (!ok) throw ConfigError("unknown key '" + join(path, key) + "'");
  }
}

std::uint64_t get_uint(const json& node, std::string_view path, std::uint64_t max) {
  if (!node.is_number_integer() || (node.is_number_integer() && !node.is_number_unsigned() && node.get<std::int64_t>() < 0))
    throw ConfigError("'" + std::string(path) + "' must be a non-negative integer");
  const auto v = node.get<std::uint64_t>();
  if (v > max) throw ConfigError("'" + std::string(path) + "' is out of range");
  return v;
}

std::uint32_t get_u32(const json& node, std::string_view path) {
  return static_cast<std::uint32_t>(get_uint(node, path, std::numeric_limits<std::uint32_t>::max()));
}

double get_double(const json& node, std::string_view path) {
  if (!node.is_number()) throw ConfigError("'" + std::string(path) + "' must be a number");
  return node.get<double>();
}

std::string get_string(const json& node, std::string_view path) {
  if (!node.is_string()) throw ConfigError("'" + std::string(path) + "' must be a string");
  return node.get<std::string>();
}

void parse_objective(const json& node, Objective& obj) {
  require_object(node, "objective");
  reject_unknown(node, "objective", {"kind", "dim"});
  if (node.contains("kind")) {
    const auto kind = get_string(node["kind"], "objective.kind");
    if (kind != "quadratic") throw ConfigError("'objective.kind' must be \"quadratic\", got \"" + kind + "\"");
  }
  if (node.contains("dim")) obj.dim = get_u32(node["dim"], "objective.dim");
}

void parse_fleet(const json& node, FleetConfig& fleet) {
  require_object(node, "fleet");
  reject_unknown(node, "fleet", {"q", "byzantine_count", "attack", "batch", "noise"});
  if (node.contains("q")) fleet.q = get_u32(node["q"], "fleet.q");
  if (node.contains("byzantine_count")) fleet.byzantine_count = get_u32(node["byzantine_count"], "fleet.byzantine_count");
  if (node.contains("attack")) {
    const auto name = get_string(node["attack"], "fleet.attack");
    const auto kind = parse_attack(name);
    if (!kind) throw ConfigError("'fleet.attack' has unknown value \"" + name + "\"");
    fleet.attack.kind = *kind;
  }
  if (node.contains("batch")) {
    const json& batch = require_object(node["batch"], "fleet.batch");
    reject_unknown(batch, "fleet.batch", {"mode", "size"});
    if (batch.contains("mode")) {
      const auto mode = get_string(batch["mode"], "fleet.batch.mode");
      if (mode == "constant") {
        fleet.batch.mode = BatchMode::kConstant;
      } else if (mode == "iteration_counter") {
        fleet.batch.mode = BatchMode::kIterationCounter;
      } else {
        throw ConfigError("'fleet.batch.mode' has unknown value \"" + mode + "\"");
      }
    }
    if (batch.contains("size")) fleet.batch.size = get_u32(batch["size"], "fleet.batch.size");
  }
  if (node.contains("noise")) {
    const json& noise = require_object(node["noise"], "fleet.noise");
    reject_unknown(noise, "fleet.noise", {"family", "sigma"});
    if (noise.contains("family")) {
      const auto family = get_string(noise["family"], "fleet.noise.family");
      bool found = false;
      for (auto f : {NoiseFamily::kGaussian, NoiseFamily::kUniform, NoiseFamily::kLaplace}) {
        if (to_string(f) == family) {
          fleet.noise.family = f;
          found = true;
        }
      }
      if (!found) throw ConfigError("'fleet.noise.family' has unknown value \"" + family + "\"");
    }
    if (noise.contains("sigma")) fleet.noise.sigma = get_double(noise["sigma"], "fleet.noise.sigma");
  }
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  require_object(doc, "");
  if (doc.contains("config")) {
    reject_unknown(doc, "", {"config", "seed", "versions"});
    return parse_run_config(doc["config"]);
  }
  reject_unknown(doc, "", {"objective", "fleet", "iterations", "initial_lr", "lr_schedule", "weight_decay",
                           "master_seed", "x0"});
  RunConfig c;
  if (doc.contains("objective")) parse_objective(doc["objective"], c.objective);
  if (doc.contains("fleet")) parse_fleet(doc["fleet"], c.fleet);
  if (doc.contains("iterations")) c.iterations = get_u32(doc["iterations"], "iterations");
  if (doc.contains("initial_lr")) c.initial_lr = get_double(doc["initial_lr"], "initial_lr");
  if (doc.contains("lr_schedule")) {
    const auto s = get_string(doc["lr_schedule"], "lr_schedule");
    if (s == "constant") {
      c.lr_schedule = LrSchedule::kConstant;
    } else if (s == "inv_sqrt") {
      c.lr_schedule = LrSchedule::kInvSqrt;
    } else {
      throw ConfigError("'lr_schedule' has unknown value \"" + s + "\"");
    }
  }
  if (doc.contains("weight_decay")) c.weight_decay = get_double(doc["weight_decay"], "weight_decay");
  if (doc.contains("master_seed"))
    c.master_seed = get_uint(doc["master_seed"], "master_seed", std::numeric_limits<std::uint64_t>::max());
  if (doc.contains("x0")) {
    const json& x0 = doc["x0"];
    if (x0.is_string()) {
      const auto name = x0.get<std::string>();
      if (name == "ones") {
        c.x0_kind = InitKind::kOnes;
      } else if (name == "zeros") {
        c.x0_kind = InitKind::kZeros;
      } else {
        throw ConfigError("'x0' has unknown initializer \"" + name + "\"");
      }
    } else if (x0.is_array()) {
      std::vector<double> values;
      values.reserve(x0.size());
      for (const auto& v : x0) values.push_back(get_double(v, "x0[]"));
      c.x0_kind = InitKind::kExplicit;
      c.x0_values = GradVector(std::move(values));
    } else {
      throw ConfigError("'x0' must be \"ones\", \"zeros\" or an array of numbers");
    }
  }
  return c;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_json_file(path)); }

json to_json(const RunConfig& c) {
  json doc;
  doc["objective"] = {{"kind", "quadratic"}, {"dim", c.objective.dim}};
  doc["fleet"] = {
      {"q", c.fleet.q},
      {"byzantine_count", c.fleet.byzantine_count},
      {"attack", std::string(to_string(c.fleet.attack.kind))},
      {"batch", {{"mode", std::string(to_string(c.fleet.batch.mode))}, {"size", c.fleet.batch.size}}},
      {"noise", {{"family", std::string(to_string(c.fleet.noise.family))}, {"sigma", c.fleet.noise.sigma}}},
  };
  doc["iterations"] = c.iterations;
  doc["initial_lr"] = c.initial_lr;
  doc["lr_schedule"] = std::string(to_string(c.lr_schedule));
  doc["weight_decay"] = c.weight_decay;
  doc["master_seed"] = c.master_seed;
  switch (c.x0_kind) {
    case InitKind::kOnes:
      doc["x0"] = "ones";
      break;
    case InitKind::kZeros:
      doc["x0"] = "zeros";
      break;
    case InitKind::kExplicit: {
      auto values = c.x0_values.values();
      doc["x0"] = std::vector<double>(values.begin(), values.end());
      break;
    }
  }
  return doc;
}

json run_manifest(const RunConfig& c) {
  return {{"config", to_json(c)},
          {"seed", c.master_seed},
          {"versions", {{"signvote", std::string(kVersion)}, {"config_format", kConfigFormat}}}};
}

BoundInputs parse_bound_inputs(const json& doc, BoundInputs in) {
  require_object(doc, "");
  reject_unknown(doc, "", {"q", "alpha", "p", "s", "sigma_l1", "smoothness_l1", "f0_minus_fstar", "k_iters"});
  if (doc.contains("q")) in.q = get_u32(doc["q"], "q");
  if (doc.contains("alpha")) in.alpha = get_double(doc["alpha"], "alpha");
  if (doc.contains("p")) in.p = get_double(doc["p"], "p");
  if (doc.contains("s")) in.s = get_double(doc["s"], "s");
  if (doc.contains("sigma_l1")) in.sigma_l1 = get_double(doc["sigma_l1"], "sigma_l1");
  if (doc.contains("smoothness_l1")) in.smoothness_l1 = get_double(doc["smoothness_l1"], "smoothness_l1");
  if (doc.contains("f0_minus_fstar")) in.f0_minus_fstar = get_double(doc["f0_minus_fstar"], "f0_minus_fstar");
  if (doc.contains("k_iters")) in.k_iters = get_u32(doc["k_iters"], "k_iters");
  return in;
}

}  // namespace signvote::cli
