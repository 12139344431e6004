#include "holosim/pulses.hpp"

#include <cmath>
#include <stdexcept>

namespace holosim {

namespace {

double gauss_raw(double t, double sigma) {
  const double x = (t - 2.0 * sigma) / sigma;
  return std::exp(-0.5 * x * x);
}

// integral of exp(-(t-2s)^2/(2s^2)) over [t0, t1]
double gauss_raw_integral(double t0, double t1, double sigma) {
  const double inv = 1.0 / (sigma * std::sqrt(2.0));
  const double c = sigma * std::sqrt(M_PI / 2.0);
  return c * (std::erf((t1 - 2.0 * sigma) * inv) - std::erf((t0 - 2.0 * sigma) * inv));
}

}  // namespace

double gaussian_area_coefficient() {
  const double e2 = std::exp(-2.0);
  return (std::sqrt(2.0 * M_PI) * std::erf(std::sqrt(2.0)) / 4.0 - e2) / (1.0 - e2);
}

Envelope Envelope::constant(double peak) {
  Envelope e;
  e.kind = EnvelopeKind::Constant;
  e.peak = peak;
  return e;
}

Envelope Envelope::truncated_gaussian(double peak, double sigma, bool baseline_subtract) {
  Envelope e;
  e.kind = EnvelopeKind::TruncatedGaussian;
  e.peak = peak;
  e.sigma = sigma;
  e.baseline_subtract = baseline_subtract;
  return e;
}

double Envelope::value(double t, double duration) const {
  if (kind == EnvelopeKind::Constant) return peak;
  (void)duration;
  const double g = gauss_raw(t, sigma);
  if (!baseline_subtract) return peak * g;
  const double e2 = std::exp(-2.0);
  return peak * (g - e2) / (1.0 - e2);
}

double Envelope::derivative(double t, double duration) const {
  if (kind == EnvelopeKind::Constant) return 0.0;
  (void)duration;
  const double g = gauss_raw(t, sigma);
  const double d = -(t - 2.0 * sigma) / (sigma * sigma) * g;
  if (!baseline_subtract) return peak * d;
  return peak * d / (1.0 - std::exp(-2.0));
}

double Envelope::area(double duration) const { return partial_area(0.0, duration, duration); }

double Envelope::partial_area(double t0, double t1, double duration) const {
  if (kind == EnvelopeKind::Constant) return peak * (t1 - t0);
  (void)duration;
  const double raw = gauss_raw_integral(t0, t1, sigma);
  if (!baseline_subtract) return peak * raw;
  const double e2 = std::exp(-2.0);
  return peak * (raw - e2 * (t1 - t0)) / (1.0 - e2);
}

nlohmann::json Envelope::to_json() const {
  if (kind == EnvelopeKind::Constant)
    return nlohmann::json{{"kind", "constant"}, {"peak_rad_per_us", peak}};
  return nlohmann::json{{"kind", "truncated_gaussian"},
                        {"peak_rad_per_us", peak},
                        {"sigma_us", sigma},
                        {"baseline_subtract", baseline_subtract}};
}

Envelope Envelope::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return constant(j.at("peak_rad_per_us").get<double>());
  if (kind == "truncated_gaussian")
    return truncated_gaussian(j.at("peak_rad_per_us").get<double>(), j.at("sigma_us").get<double>(),
                              j.value("baseline_subtract", true));
  throw std::invalid_argument("envelope: unknown kind '" + kind + "'");
}

nlohmann::json PhaseProgram::to_json() const {
  if (kind == Kind::Constant) return nlohmann::json{{"kind", "constant"}, {"intercept_rad", intercept}};
  return nlohmann::json{{"kind", "linear"}, {"slope_rad_per_us", slope}, {"intercept_rad", intercept}};
}

PhaseProgram PhaseProgram::from_json(const nlohmann::json& j) {
  PhaseProgram p;
  const std::string kind = j.at("kind").get<std::string>();
  p.intercept = j.at("intercept_rad").get<double>();
  if (kind == "constant") {
    p.kind = Kind::Constant;
  } else if (kind == "linear") {
    p.kind = Kind::LinearRamp;
    p.slope = j.at("slope_rad_per_us").get<double>();
  } else {
    throw std::invalid_argument("phase: unknown kind '" + kind + "'");
  }
  return p;
}

double PulseSchedule::duration() const {
  double total = 0;
  for (const auto& seg : segments) total += seg.duration;
  return total;
}

int PulseSchedule::segment_index(double t) const {
  if (t < -1e-12 || t > duration() + 1e-12)
    throw std::out_of_range("schedule: time outside [0, duration]");
  double acc = 0;
  for (size_t k = 0; k < segments.size(); ++k) {
    acc += segments[k].duration;
    if (t <= acc || k + 1 == segments.size()) return int(k);
  }
  throw std::out_of_range("schedule: empty schedule");
}

double PulseSchedule::omega_at(double t) const {
  const int k = segment_index(t);
  double start = 0;
  for (int j = 0; j < k; ++j) start += segments[j].duration;
  return segments[k].envelope.value(t - start, segments[k].duration);
}

double PulseSchedule::phi2_at(double t) const {
  const int k = segment_index(t);
  double start = 0;
  for (int j = 0; j < k; ++j) start += segments[j].duration;
  return segments[k].phase.at(t - start);
}

nlohmann::json PulseSchedule::to_json() const {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& seg : segments)
    segs.push_back(nlohmann::json{{"duration_us", seg.duration},
                                  {"envelope", seg.envelope.to_json()},
                                  {"phase", seg.phase.to_json()}});
  nlohmann::json j{{"gamma_rad", gamma}, {"theta_rad", theta}, {"phi_rad", phi}, {"segments", segs}};
  if (!note.empty()) j["note"] = note;
  return j;
}

PulseSchedule PulseSchedule::from_json(const nlohmann::json& j) {
  PulseSchedule s;
  s.gamma = j.at("gamma_rad").get<double>();
  s.theta = j.at("theta_rad").get<double>();
  s.phi = j.at("phi_rad").get<double>();
  for (const auto& seg : j.at("segments")) {
    Segment out;
    out.duration = seg.at("duration_us").get<double>();
    out.envelope = Envelope::from_json(seg.at("envelope"));
    out.phase = PhaseProgram::from_json(seg.at("phase"));
    s.segments.push_back(out);
  }
  if (j.contains("note")) s.note = j.at("note").get<std::string>();
  return s;
}

std::vector<std::array<double, 3>> PulseSchedule::sample(double dt) const {
  std::vector<std::array<double, 3>> rows;
  if (trivial()) return rows;
  const double total = duration();
  const int n = std::max(1, int(std::ceil(total / dt)));
  for (int k = 0; k <= n; ++k) {
    const double t = std::min(total, k * dt);
    rows.push_back({t, omega_at(t), phi2_at(t)});
  }
  return rows;
}

double tau_min(double gamma, double omega) {
  if (!(omega > 0)) throw std::invalid_argument("tau_min: omega must be > 0");
  if (!(gamma > 0.0 && gamma < 2.0 * M_PI))
    throw std::domain_error("tau_min: gamma must lie in (0, 2pi)");
  const double d = M_PI - gamma;
  return 2.0 * std::sqrt(M_PI * M_PI - d * d) / omega;
}

PulseSchedule make_bnhqc(double gamma, double theta, double phi, double omega) {
  if (!(omega > 0)) throw std::invalid_argument("make_bnhqc: omega must be > 0");
  PulseSchedule s;
  s.gamma = gamma;
  s.theta = theta;
  s.phi = phi;
  if (gamma == 0.0 || gamma == 2.0 * M_PI) {
    s.note = "gamma at a degenerate endpoint; emitted a zero-duration identity schedule";
    return s;
  }
  const double tau = tau_min(gamma, omega);
  Segment seg;
  seg.duration = tau;
  seg.envelope = Envelope::constant(omega);
  seg.phase.kind = PhaseProgram::Kind::LinearRamp;
  seg.phase.slope = 2.0 * (gamma - M_PI) / tau;
  seg.phase.intercept = 0.0;
  s.segments.push_back(seg);
  return s;
}

PulseSchedule make_nhqc(double gamma, double theta, double phi, const Envelope& envelope) {
  if (!(envelope.peak > 0)) throw std::invalid_argument("make_nhqc: envelope peak must be > 0");
  PulseSchedule s;
  s.gamma = gamma;
  s.theta = theta;
  s.phi = phi;

  double t_seg;
  Envelope env = envelope;
  if (envelope.kind == EnvelopeKind::Constant) {
    t_seg = M_PI / envelope.peak;
  } else {
    t_seg = M_PI / (envelope.peak * gaussian_area_coefficient());
    env.sigma = t_seg / 4.0;
    env.baseline_subtract = true;
  }

  Segment first;
  first.duration = t_seg;
  first.envelope = env;
  first.phase.kind = PhaseProgram::Kind::Constant;
  first.phase.intercept = 0.0;

  Segment second = first;
  second.phase.intercept = M_PI + gamma;

  s.segments = {first, second};
  return s;
}

ToneSample two_tone(const PulseSchedule& s, double t) {
  const BrightFrame f = s.frame();
  ToneSample out;
  const double omega = s.omega_at(t);
  out.phi2 = s.phi2_at(t);
  out.omega1 = omega * std::sin(f.theta / 2.0);
  out.omega2 = omega * std::cos(f.theta / 2.0);
  out.phi1 = f.phi + out.phi2;
  return out;
}

namespace {

double adaptive_simpson(const PulseSchedule& s, double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = s.omega_at(lm);
  const double frm = s.omega_at(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(s, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(s, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace

double area(const PulseSchedule& s) {
  if (s.trivial()) return 0.0;
  double total = 0.0;
  double start = 0.0;
  for (const auto& seg : s.segments) {
    const double a = start;
    const double b = start + seg.duration;
    const double fa = s.omega_at(a);
    const double fb = s.omega_at(b);
    const double m = 0.5 * (a + b);
    const double fm = s.omega_at(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = 1e-10 * std::max(1.0, std::abs(whole));
    total += adaptive_simpson(s, a, b, fa, fm, fb, whole, eps, 40);
    start = b;
  }
  return total;
}

std::vector<DriveTone> lab_tones(const PulseSchedule& s, const SpinSystemParams& p, double t) {
  const ToneSample tt = two_tone(s, t);
  DriveTone lower;  // |0> <-> |a>
  lower.carrier = p.omega_lower();
  lower.amplitude = tt.omega1;
  lower.phase = -tt.phi1;
  lower.target = Transition::ZeroToAncilla;
  DriveTone upper;  // |a> <-> |1>
  upper.carrier = p.omega_upper();
  upper.amplitude = tt.omega2;
  upper.phase = -tt.phi2;
  upper.target = Transition::AncillaToOne;
  return {lower, upper};
}

}  // namespace holosim
