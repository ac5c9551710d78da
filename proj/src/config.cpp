#include "evobandit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace evobandit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

long long parse_int(const std::string& where, const std::string& v) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(where, "expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& where, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(where, "expected an unsigned integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& where, const std::string& v) {
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(out))
      fail(where, "expected a finite real, got '" + v + "'");
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(where, "expected a finite real, got '" + v + "'");
  }
}

ScheduleKind parse_schedule_kind(const std::string& where,
                                 const std::string& v) {
  if (v == "constant") return ScheduleKind::Constant;
  if (v == "inverse-sqrt") return ScheduleKind::InverseSqrt;
  if (v == "inverse") return ScheduleKind::Inverse;
  if (v == "zero") return ScheduleKind::Zero;
  fail(where, "unknown schedule '" + v +
                  "' (want constant|inverse-sqrt|inverse|zero)");
}

InitKind parse_init_kind(const std::string& where, const std::string& v) {
  if (v == "zeros") return InitKind::Zeros;
  if (v == "uniform") return InitKind::Uniform;
  fail(where, "unknown init '" + v + "' (want zeros|uniform)");
}

}  // namespace

ArmSpec parse_arm(const std::string& spec) {
  const std::string where = "arm '" + spec + "'";
  auto parts = split(spec, ':');
  if (parts.empty() || parts[0].empty()) fail(where, "empty arm spec");

  ArmSpec arm;
  arm.label = trim(spec);
  if (parts[0] == "tsde") {
    if (parts.size() > 1) fail(where, "tsde arm takes no parameters");
    arm.algorithm = Algorithm::TSDE;
    return arm;
  }
  arm.algorithm = Algorithm::BasicDE;
  arm.schedule.kind = parse_schedule_kind(where, parts[0]);
  if (parts.size() > 3) fail(where, "too many ':' fields");
  if (parts.size() >= 2 && !parts[1].empty())
    arm.schedule.c = parse_real(where, parts[1]);
  else if (arm.schedule.kind != ScheduleKind::Zero)
    fail(where, "schedule '" + parts[0] + "' needs a rate, e.g. '" +
                    parts[0] + ":0.5'");
  if (parts.size() == 3) arm.init = parse_init_kind(where, parts[2]);
  if (arm.schedule.c < 0.0) fail(where, "rate must be >= 0");
  return arm;
}

RunSpec parse_config_text(const std::string& text, const std::string& name) {
  RunSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = name + ":" + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "missing key before '='");
    if (value.empty()) fail(where, "missing value for '" + key + "'");

    if (key == "d") {
      spec.base.d = static_cast<int>(parse_int(where, value));
    } else if (key == "M") {
      spec.m_values.clear();
      for (const auto& item : split(value, ',')) {
        if (item.empty()) fail(where, "empty entry in M list");
        spec.m_values.push_back(static_cast<int>(parse_int(where, item)));
      }
    } else if (key == "T") {
      spec.base.T = static_cast<int>(parse_int(where, value));
    } else if (key == "mu") {
      spec.base.mu = parse_real(where, value);
    } else if (key == "lambda") {
      spec.base.prior.lambda = parse_real(where, value);
    } else if (key == "sigma") {
      spec.base.prior.sigma = parse_real(where, value);
    } else if (key == "seed") {
      spec.base.seed = parse_u64(where, value);
      spec.seed_in_file = true;
    } else if (key == "algorithm") {
      if (value == "tsde")
        spec.base.algorithm = Algorithm::TSDE;
      else if (value == "basic-de")
        spec.base.algorithm = Algorithm::BasicDE;
      else
        fail(where, "unknown algorithm '" + value + "' (want tsde|basic-de)");
    } else if (key == "schedule") {
      spec.base.schedule.kind = parse_schedule_kind(where, value);
    } else if (key == "c") {
      spec.base.schedule.c = parse_real(where, value);
    } else if (key == "init") {
      spec.base.init = parse_init_kind(where, value);
    } else if (key == "snapshot_every") {
      spec.base.snapshot_every = static_cast<int>(parse_int(where, value));
    } else if (key == "n_trials") {
      spec.n_trials = static_cast<int>(parse_int(where, value));
    } else if (key == "output_dir") {
      spec.output_dir = value;
    } else if (key == "arms") {
      spec.arms.clear();
      for (const auto& item : split(value, ',')) {
        if (item.empty()) fail(where, "empty entry in arms list");
        spec.arms.push_back(parse_arm(item));
      }
    } else {
      fail(where, "unknown key '" + key + "'");
    }
  }

  if (spec.m_values.empty()) spec.m_values.push_back(spec.base.M);
  spec.base.M = spec.m_values.front();
  for (int m : spec.m_values)
    if (m < 1) fail(name, "M entries must be >= 1");
  if (spec.n_trials < 1) fail(name, "n_trials must be >= 1");
  try {
    validate_config(spec.base);
  } catch (const std::invalid_argument& e) {
    fail(name, e.what());
  }
  return spec;
}

RunSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string algorithm_name(Algorithm a) {
  return a == Algorithm::TSDE ? "tsde" : "basic-de";
}

std::string schedule_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::InverseSqrt: return "inverse-sqrt";
    case ScheduleKind::Inverse: return "inverse";
    case ScheduleKind::Zero: return "zero";
  }
  return "constant";
}

std::string init_name(InitKind k) {
  return k == InitKind::Uniform ? "uniform" : "zeros";
}

}  // namespace evobandit
