#include "cli/design_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spinstar::cli {
namespace {

using nlohmann::json;

std::string number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::string number_list(const double* values, std::size_t count) {
  std::string out = "[";
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) out += ", ";
    out += number(values[k]);
  }
  return out + "]";
}

const json& field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object() || !object.contains(key)) {
    throw DesignFileError("design file: missing field '" + path + "'");
  }
  return object.at(key);
}

double real_field(const json& object, const char* key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_number()) throw DesignFileError("design file: field '" + path + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw DesignFileError("design file: field '" + path + "' is not finite");
  return x;
}

long long integer_field(const json& object, const char* key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_number_integer()) {
    throw DesignFileError("design file: field '" + path + "' must be an integer");
  }
  return v.get<long long>();
}

std::vector<double> real_list(const json& object, const char* key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_array()) throw DesignFileError("design file: field '" + path + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string item = path + "[" + std::to_string(k) + "]";
    if (!v[k].is_number()) throw DesignFileError("design file: field '" + item + "' must be a number");
    out.push_back(v[k].get<double>());
    if (!std::isfinite(out.back())) {
      throw DesignFileError("design file: field '" + item + "' is not finite");
    }
  }
  return out;
}

}  // namespace

std::string serialize_design(const RoutingState& state) {
  const DesignSolution& s = state.base;
  const ReducedParams& p = s.params;
  const StarSpec& star = state.realized_spec;
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema_version\": " << kDesignSchemaVersion << ",\n";
  out << "  \"m\": " << p.m << ",\n";
  out << "  \"eta\": " << s.eta << ",\n";
  out << "  \"root_choice\": \"" << s.root.to_string() << "\",\n";
  out << "  \"a\": " << number(p.a) << ",\n";
  out << "  \"b\": " << number(p.b) << ",\n";
  out << "  \"c\": " << number(p.c) << ",\n";
  out << "  \"d\": " << number(p.d) << ",\n";
  out << "  \"e\": " << number(p.e) << ",\n";
  out << "  \"tau\": " << number(s.transfer_time) << ",\n";
  out << "  \"spectrum\": " << number_list(s.target_spectrum.data(), s.target_spectrum.size())
      << ",\n";
  out << "  \"realized\": {\n";
  out << "    \"edge_count\": " << star.edge_count << ",\n";
  out << "    \"coupling\": " << number(star.coupling) << ",\n";
  out << "    \"source\": " << state.source << ",\n";
  out << "    \"target\": " << state.target << ",\n";
  out << "    \"potentials\": " << number_list(star.potentials.data(), star.potentials.size())
      << "\n";
  out << "  },\n";
  out << "  \"residuals\": {\n";
  out << "    \"root\": " << number(s.root_residual) << ",\n";
  out << "    \"lambda\": " << number(s.lambda_residual) << "\n";
  out << "  }\n";
  out << "}\n";
  return out.str();
}

RoutingState parse_design(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DesignFileError(std::string("design file: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DesignFileError("design file: top level must be an object");

  const long long version = integer_field(doc, "schema_version", "schema_version");
  if (version != kDesignSchemaVersion) {
    throw DesignFileError("design file: field 'schema_version' is " + std::to_string(version) +
                          ", expected " + std::to_string(kDesignSchemaVersion));
  }

  RoutingState state;
  DesignSolution& s = state.base;
  ReducedParams& p = s.params;

  const long long m = integer_field(doc, "m", "m");
  if (m < 1 || m > 100'000'000) throw DesignFileError("design file: field 'm' out of range");
  p.m = static_cast<int>(m);
  const long long eta = integer_field(doc, "eta", "eta");
  if (eta < 2 || eta % 2 != 0 || eta > 2'000'000'000LL) {
    throw DesignFileError("design file: field 'eta' must be a positive even integer");
  }
  s.eta = static_cast<int>(eta);

  const json& root = field(doc, "root_choice", "root_choice");
  if (!root.is_string()) throw DesignFileError("design file: field 'root_choice' must be a string");
  try {
    s.root = RootChoice::parse(root.get<std::string>());
  } catch (const ValidationError& e) {
    throw DesignFileError(std::string("design file: field 'root_choice': ") + e.what());
  }

  p.a = real_field(doc, "a", "a");
  p.b = real_field(doc, "b", "b");
  p.c = real_field(doc, "c", "c");
  p.d = real_field(doc, "d", "d");
  p.e = real_field(doc, "e", "e");
  if (p.e <= 0.0) throw DesignFileError("design file: field 'e' must be positive");
  s.transfer_time = real_field(doc, "tau", "tau");
  if (s.transfer_time <= 0.0) throw DesignFileError("design file: field 'tau' must be positive");

  const std::vector<double> spectrum = real_list(doc, "spectrum", "spectrum");
  if (spectrum.size() != 4) throw DesignFileError("design file: field 'spectrum' needs 4 entries");
  std::copy(spectrum.begin(), spectrum.end(), s.target_spectrum.begin());

  const json& realized = field(doc, "realized", "realized");
  StarSpec& star = state.realized_spec;
  const long long edges = integer_field(realized, "edge_count", "realized.edge_count");
  if (edges != m + 2) {
    throw DesignFileError("design file: field 'realized.edge_count' must equal m + 2");
  }
  star.edge_count = static_cast<int>(edges);
  star.coupling = real_field(realized, "coupling", "realized.coupling");
  star.potentials = real_list(realized, "potentials", "realized.potentials");
  const long long source = integer_field(realized, "source", "realized.source");
  const long long target = integer_field(realized, "target", "realized.target");
  if (source < 1 || source > edges) {
    throw DesignFileError("design file: field 'realized.source' is not an edge node");
  }
  if (target < 1 || target > edges || target == source) {
    throw DesignFileError("design file: field 'realized.target' is not a valid edge node");
  }
  state.source = static_cast<NodeIndex>(source);
  state.target = static_cast<NodeIndex>(target);
  try {
    star.validate();
  } catch (const ValidationError& e) {
    throw DesignFileError(std::string("design file: field 'realized': ") + e.what());
  }

  const json& residuals = field(doc, "residuals", "residuals");
  s.root_residual = real_field(residuals, "root", "residuals.root");
  s.lambda_residual = real_field(residuals, "lambda", "residuals.lambda");

  // The design's default realization is route 1 -> 2 on the same parameters.
  s.realized = realize_star(p);
  return state;
}

RoutingState read_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DesignFileError("cannot open design file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_design(buf.str());
}

void write_design_file(const std::string& path, const RoutingState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DesignFileError("cannot write design file '" + path + "'");
  out << serialize_design(state);
  if (!out) throw DesignFileError("failed writing design file '" + path + "'");
}

}  // namespace spinstar::cli
