// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/config.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gfmimo {

using nlohmann::json;

std::string to_string(PrecoderKind k) {
  return k == PrecoderKind::OrthonormalColumns ? "orthonormal_columns"
                                               : "normalized_gaussian";
}

PrecoderKind precoder_kind_from_string(const std::string& s) {
  if (s == "orthonormal_columns") return PrecoderKind::OrthonormalColumns;
  if (s == "normalized_gaussian") return PrecoderKind::NormalizedGaussian;
  throw std::invalid_argument("unknown precoder_kind: " + s);
}

double SystemConfig::rho0() const { return std::pow(10.0, es_n0_db / 10.0); }

int SystemConfig::max_bomp_iters() const {
  if (msg_len <= 0) return 0;
  return static_cast<int>((static_cast<long long>(n_antennas) * frame_len) /
                          msg_len);
}

std::vector<std::string> validate_config(const SystemConfig& cfg) {
  std::vector<std::string> errs;
  auto fail = [&errs](const std::string& m) { errs.push_back(m); };
  std::ostringstream os;

  auto positive = [&](const char* name, long long v) {
    if (v < 1) {
      std::ostringstream o;
      o << name << " must be >= 1, got " << v;
      fail(o.str());
    }
  };
  positive("n_online", cfg.n_online);
  positive("n_active", cfg.n_active);
  positive("n_antennas", cfg.n_antennas);
  positive("frame_len", cfg.frame_len);
  positive("msg_len", cfg.msg_len);
  positive("bomp_iters", cfg.bomp_iters);

  if (cfg.msg_len >= cfg.frame_len) {
    os.str("");
    os << "msg_len < frame_len violated: d=" << cfg.msg_len
       << " T=" << cfg.frame_len;
    fail(os.str());
  }
  if (cfg.n_active > cfg.n_online) {
    os.str("");
    os << "n_active <= n_online violated: N_a=" << cfg.n_active
       << " N=" << cfg.n_online;
    fail(os.str());
  }
  if (cfg.msg_len >= 1 && cfg.bomp_iters > cfg.max_bomp_iters()) {
    os.str("");
    os << "K exceeds floor(MT/d)=" << cfg.max_bomp_iters()
       << ": K=" << cfg.bomp_iters;
    fail(os.str());
  }
  if (!std::isfinite(cfg.es_n0_db)) fail("es_n0_db must be finite");
  if (cfg.fer_bit_threshold < 0) fail("fer_bit_threshold must be >= 0");
  return errs;
}

namespace {
const std::set<std::string> kConfigKeys = {
    "n_online",  "n_active",          "n_antennas", "frame_len",
    "msg_len",   "bomp_iters",        "es_n0_db",   "precoder_kind",
    "fer_bit_threshold", "seed"};
}

SystemConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (!kConfigKeys.count(key))
      throw std::invalid_argument("unknown config key: " + key);
  }
  SystemConfig cfg;
  cfg.n_online = j.at("n_online").get<int>();
  cfg.n_active = j.at("n_active").get<int>();
  cfg.n_antennas = j.at("n_antennas").get<int>();
  cfg.frame_len = j.at("frame_len").get<int>();
  cfg.msg_len = j.at("msg_len").get<int>();
  cfg.bomp_iters = j.at("bomp_iters").get<int>();
  cfg.es_n0_db = j.at("es_n0_db").get<double>();
  if (j.contains("precoder_kind"))
    cfg.precoder_kind =
        precoder_kind_from_string(j.at("precoder_kind").get<std::string>());
  if (j.contains("fer_bit_threshold"))
    cfg.fer_bit_threshold = j.at("fer_bit_threshold").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

SystemConfig config_from_json_text(const std::string& text) {
  return config_from_json(json::parse(text));
}

std::string config_to_json_text(const SystemConfig& cfg) {
  json j;
  j["n_online"] = cfg.n_online;
  j["n_active"] = cfg.n_active;
  j["n_antennas"] = cfg.n_antennas;
  j["frame_len"] = cfg.frame_len;
  j["msg_len"] = cfg.msg_len;
  j["bomp_iters"] = cfg.bomp_iters;
  j["es_n0_db"] = cfg.es_n0_db;
  j["precoder_kind"] = to_string(cfg.precoder_kind);
  j["fer_bit_threshold"] = cfg.fer_bit_threshold;
  j["seed"] = cfg.seed;
  return j.dump(2);
}

void apply_override(SystemConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (!kConfigKeys.count(key))
    throw std::invalid_argument("unknown override key: " + key);
  if (key == "precoder_kind") {
    cfg.precoder_kind = precoder_kind_from_string(value);
    return;
  }
  if (key == "es_n0_db") {
    cfg.es_n0_db = std::stod(value);
    return;
  }
  if (key == "seed") {
    cfg.seed = std::stoull(value);
    return;
  }
  const int v = std::stoi(value);
  if (key == "n_online") cfg.n_online = v;
  else if (key == "n_active") cfg.n_active = v;
  else if (key == "n_antennas") cfg.n_antennas = v;
  else if (key == "frame_len") cfg.frame_len = v;
  else if (key == "msg_len") cfg.msg_len = v;
  else if (key == "bomp_iters") cfg.bomp_iters = v;
  else if (key == "fer_bit_threshold") cfg.fer_bit_threshold = v;
}

}  // namespace gfmimo
