#include "rindler/dump.hpp"

#include <cmath>
#include <cstdio>

namespace rindler {

nlohmann::json state_dump(const StateVector& state) {
  nlohmann::json reg = nlohmann::json::array();
  for (const auto& label : state.mode_register().modes()) {
    reg.push_back(to_string(label));
  }
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& [bs, amp] : state.amplitudes()) {
    amps.push_back({{"bits", bs.bits()}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return {{"register", reg}, {"amplitudes", amps}};
}

StateVector state_from_dump(const nlohmann::json& dump) {
  std::vector<ModeLabel> labels;
  for (const auto& entry : dump.at("register")) {
    labels.push_back(parse_mode_label(entry.get<std::string>()));
  }
  StateVector state{ModeRegister(std::move(labels))};
  for (const auto& entry : dump.at("amplitudes")) {
    state.accumulate(BasisState::from_bits(entry.at("bits").get<std::string>()),
                     Complex{entry.at("re").get<double>(), entry.at("im").get<double>()});
  }
  return state;
}

std::string format_csv_number(double x) {
  char buf[64];
  if (!std::isfinite(x)) {
    std::snprintf(buf, sizeof buf, "%f", x);
    return buf;
  }
  const double ax = std::abs(x);
  if (ax != 0.0 && ax < 1e-3) {
    std::snprintf(buf, sizeof buf, "%.8e", x);
    return buf;
  }
  const int exponent = ax == 0.0 ? 0 : static_cast<int>(std::floor(std::log10(ax)));
  const int precision = std::max(0, 8 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

}  // namespace rindler
