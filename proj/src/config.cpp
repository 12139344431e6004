#include "holosim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace holosim {

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      throw std::invalid_argument("config: unknown key '" + item.key() + "' in " + where);
  }
}

}  // namespace

Envelope RunConfig::nhqc_env() const {
  if (nhqc_envelope == "constant") return Envelope::constant(nhqc_peak());
  return Envelope::truncated_gaussian(nhqc_peak(), 0.0, true);
}

PulseSchedule RunConfig::schedule() const {
  if (scheme == "bnhqc") return bnhqc_schedule(gate, rabi());
  return nhqc_schedule(gate, nhqc_env());
}

void RunConfig::validate() const {
  system.validate();
  noise.validate();
  integrator.validate();
  if (scheme != "nhqc" && scheme != "bnhqc")
    throw std::invalid_argument("config: scheme must be 'nhqc' or 'bnhqc', got '" + scheme + "'");
  if (!(rabi_mhz > 0)) throw std::invalid_argument("config: rabi_mhz must be > 0");
  if (!(nhqc_peak_mhz > 0)) throw std::invalid_argument("config: nhqc_peak_mhz must be > 0");
  if (nhqc_envelope != "gaussian" && nhqc_envelope != "constant")
    throw std::invalid_argument("config: nhqc_envelope must be 'gaussian' or 'constant'");
  if (output.format != "csv" && output.format != "json" && output.format != "both")
    throw std::invalid_argument("config: output format must be csv|json|both");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  reject_unknown_keys(j, {"system", "scheme", "gate", "rabi_mhz", "nhqc_peak_mhz", "nhqc_envelope",
                          "noise", "integrator", "output", "seed", "threads"},
                      "config root");
  if (j.contains("system")) {
    reject_unknown_keys(j.at("system"),
                        {"d_mhz", "gamma_e_mhz_per_g", "gamma_n_mhz_per_g", "p_quad_mhz", "a_hf_mhz",
                         "b0_gauss"},
                        "system");
    cfg.system = SpinSystemParams::from_json(j.at("system"));
  }
  if (j.contains("scheme")) cfg.scheme = j.at("scheme").get<std::string>();
  if (j.contains("gate")) {
    reject_unknown_keys(j.at("gate"), {"name", "gamma_rad", "theta_rad", "phi_rad"}, "gate");
    cfg.gate = GateSpec::from_json(j.at("gate"));
  }
  if (j.contains("rabi_mhz")) cfg.rabi_mhz = j.at("rabi_mhz").get<double>();
  if (j.contains("nhqc_peak_mhz")) cfg.nhqc_peak_mhz = j.at("nhqc_peak_mhz").get<double>();
  if (j.contains("nhqc_envelope")) cfg.nhqc_envelope = j.at("nhqc_envelope").get<std::string>();
  if (j.contains("noise")) {
    reject_unknown_keys(j.at("noise"),
                        {"detuning_sigma_rad_per_us", "amplitude_rel_sigma", "dephasing_rate_e_per_us",
                         "dephasing_rate_n_per_us", "depol_per_gate"},
                        "noise");
    cfg.noise = NoiseModel::from_json(j.at("noise"));
  }
  if (j.contains("integrator")) {
    reject_unknown_keys(j.at("integrator"), {"max_phase_rad", "min_steps_per_segment"}, "integrator");
    cfg.integrator = StepPolicy::from_json(j.at("integrator"));
  }
  if (j.contains("output")) {
    reject_unknown_keys(j.at("output"), {"dir", "format"}, "output");
    if (j.at("output").contains("dir")) cfg.output.dir = j.at("output").at("dir").get<std::string>();
    if (j.at("output").contains("format"))
      cfg.output.format = j.at("output").at("format").get<std::string>();
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

ordered_json RunConfig::echo() const {
  ordered_json j;
  j["system"] = system.to_json();
  j["scheme"] = scheme;
  j["gate"] = gate.to_json();
  j["rabi_mhz"] = rabi_mhz;
  j["nhqc_peak_mhz"] = nhqc_peak_mhz;
  j["nhqc_envelope"] = nhqc_envelope;
  j["noise"] = noise.to_json();
  j["integrator"] = integrator.to_json();
  j["output"] = ordered_json{{"dir", output.dir}, {"format", output.format}};
  j["seed"] = seed;
  j["threads"] = threads;
  return j;
}

GateSpec parse_gate_arg(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("gate: empty specification");
  if (text.front() != '(') return GateSpec::named(text);
  if (text.back() != ')') throw std::invalid_argument("gate: expected closing ')'");
  GateSpec g;
  bool saw_gamma = false, saw_theta = false, saw_phi = false;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("gate: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (key == "gamma") { g.gamma = value; saw_gamma = true; }
    else if (key == "theta") { g.theta = value; saw_theta = true; }
    else if (key == "phi") { g.phi = value; saw_phi = true; }
    else throw std::invalid_argument("gate: unknown key '" + key + "'");
  }
  if (!saw_gamma || !saw_theta || !saw_phi)
    throw std::invalid_argument("gate: need gamma, theta and phi");
  return g;
}

}  // namespace holosim
