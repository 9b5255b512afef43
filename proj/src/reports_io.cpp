#include "borbit/reports_io.hpp"

#include <cstdio>

namespace borbit {

namespace {

// Shortest round-trip double text; enough digits that plots do not care.
std::string float_text(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", to_double(value));
  return buffer;
}

// Quotes a CSV field when it contains a comma or a quote.
std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) {
    return raw;
  }
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string property_report_csv(const PropertyReport& report) {
  std::string out = "instance,lhs,lhs_float,rhs,rhs_float,verdict\n";
  for (const PropertyRow& row : report.rows) {
    out += csv_field(row.instance);
    out += ',' + to_string(row.lhs) + ',' + float_text(row.lhs);
    out += ',' + to_string(row.rhs) + ',' + float_text(row.rhs);
    out += ',';
    out += verdict_name(row.verdict);
    out += '\n';
  }
  return out;
}

nlohmann::json property_report_json(const PropertyReport& report) {
  nlohmann::json summary;
  summary["property"] = report.property;
  summary["rows"] = report.rows.size();
  summary["pass"] = report.count(Verdict::pass);
  summary["fail"] = report.count(Verdict::fail);
  summary["indeterminate"] = report.count(Verdict::indeterminate);
  summary["verdict"] = std::string(verdict_name(report.aggregate()));
  return summary;
}

std::string trajectory_csv(const Trajectory& trajectory, const TargetSet& target) {
  std::string out = "i,f_i,d_to_E,d_to_E_float,certified_step_error,delta_i\n";
  for (std::size_t i = 0; i < trajectory.points.size(); ++i) {
    const Rational d = distance_to_set(trajectory.points[i], target);
    out += std::to_string(i) + ',';
    if (i < trajectory.selector_trace.size()) {
      out += std::to_string(trajectory.selector_trace[i]);
    }
    out += ',' + to_string(d) + ',' + float_text(d) + ',';
    if (i < trajectory.certified_step_errors.size()) {
      out += to_string(trajectory.certified_step_errors[i]);
    }
    out += ',';
    if (i < trajectory.schedule_values.size()) {
      out += to_string(trajectory.schedule_values[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json monitor_summary_json(const MonitorReport& report, std::size_t horizon) {
  nlohmann::json summary;
  summary["horizon"] = horizon;
  summary["epsilon"] = to_string(report.epsilon);
  summary["epsilon_float"] = to_double(report.epsilon);
  if (report.n_bar) {
    summary["n_bar"] = *report.n_bar;
    summary["peak_after_n_bar"] = to_string(report.peak_after_n_bar);
    summary["verdict"] = "pass";
  } else {
    summary["n_bar"] = nullptr;
    summary["verdict"] = "fail";
  }
  return summary;
}

std::string pair_run_csv(const PairReport& report) {
  std::string out = "i,f_i,d_pair,d_pair_float,err_x,err_y,delta_i\n";
  for (std::size_t i = 0; i < report.pair_distances.size(); ++i) {
    out += std::to_string(i) + ',';
    if (i < report.x.selector_trace.size()) {
      out += std::to_string(report.x.selector_trace[i]);
    }
    out += ',' + to_string(report.pair_distances[i]) + ',' +
           float_text(report.pair_distances[i]) + ',';
    if (i < report.x.certified_step_errors.size()) {
      out += to_string(report.x.certified_step_errors[i]);
    }
    out += ',';
    if (i < report.y.certified_step_errors.size()) {
      out += to_string(report.y.certified_step_errors[i]);
    }
    out += ',';
    if (i < report.x.schedule_values.size()) {
      out += to_string(report.x.schedule_values[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json pair_summary_json(const PairReport& report, std::size_t horizon) {
  nlohmann::json summary;
  summary["horizon"] = horizon;
  summary["epsilon"] = to_string(report.epsilon);
  summary["epsilon_float"] = to_double(report.epsilon);
  if (report.n_check) {
    summary["n_check"] = *report.n_check;
    summary["verdict"] = "pass";
  } else {
    summary["n_check"] = nullptr;
    summary["verdict"] = "fail";
  }
  return summary;
}

std::string divergent_orbit_csv(const DivergentOrbit& orbit) {
  std::string out = "i,coordinates,d_to_zero,d_to_zero_float,delta_i\n";
  for (std::size_t i = 0; i < orbit.z.size(); ++i) {
    const Rational d = distance(orbit.z[i], SeqPoint::zero());
    out += std::to_string(i) + ',';
    out += csv_field(orbit.z[i].to_text());
    out += ',' + to_string(d) + ',' + float_text(d) + ',';
    if (i < orbit.delta.size()) {
      out += to_string(orbit.delta[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json divergent_orbit_json(const DivergentOrbit& orbit) {
  nlohmann::json data;
  data["format"] = "divergent-orbit/1";
  data["z"] = nlohmann::json::array();
  for (const SeqPoint& point : orbit.z) {
    data["z"].push_back(point.to_text());
  }
  data["t"] = orbit.t;
  data["delta"] = nlohmann::json::array();
  for (const Rational& d : orbit.delta) {
    data["delta"].push_back(to_string(d));
  }
  return data;
}

DivergentOrbit divergent_orbit_from_json(const nlohmann::json& data) {
  if (!data.is_object() || data.value("format", "") != "divergent-orbit/1") {
    throw std::invalid_argument("not a divergent-orbit/1 document");
  }
  DivergentOrbit orbit;
  for (const auto& text : data.at("z")) {
    orbit.z.push_back(SeqPoint::from_text(text.get<std::string>()));
  }
  for (const auto& step : data.at("t")) {
    orbit.t.push_back(step.get<std::size_t>());
  }
  for (const auto& text : data.at("delta")) {
    orbit.delta.push_back(parse_rational(text.get<std::string>()));
  }
  return orbit;
}

std::string verification_report_csv(const VerificationReport& report) {
  std::string out = "inequality,lhs,lhs_float,rhs,rhs_float,margin,margin_float,verdict\n";
  for (const VerificationRow& row : report.rows) {
    out += csv_field(row.inequality);
    out += ',' + to_string(row.lhs) + ',' + float_text(row.lhs);
    out += ',' + to_string(row.rhs) + ',' + float_text(row.rhs);
    out += ',' + to_string(row.margin) + ',' + float_text(row.margin);
    out += ',';
    out += verdict_name(row.verdict);
    out += '\n';
  }
  return out;
}

nlohmann::json verification_report_json(const VerificationReport& report) {
  nlohmann::json summary;
  summary["rows"] = report.rows.size();
  summary["pass"] = report.count(Verdict::pass);
  summary["fail"] = report.count(Verdict::fail);
  summary["indeterminate"] = report.count(Verdict::indeterminate);
  summary["verdict"] = std::string(verdict_name(report.aggregate()));
  if (!report.note.empty()) {
    summary["note"] = report.note;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const VerificationRow& row : report.rows) {
    nlohmann::json entry;
    entry["inequality"] = row.inequality;
    entry["lhs"] = to_string(row.lhs);
    entry["rhs"] = to_string(row.rhs);
    entry["margin"] = to_string(row.margin);
    entry["verdict"] = std::string(verdict_name(row.verdict));
    rows.push_back(std::move(entry));
  }
  summary["checks"] = std::move(rows);
  return summary;
}

}  // namespace borbit
