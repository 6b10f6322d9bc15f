#include "cli/trace_file.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "spinstar/dynamics.hpp"
#include "spinstar/errors.hpp"

namespace spinstar::cli {

void write_trace(std::ostream& out, const FidelityTrace& trace) {
  out << "t,fidelity\n";
  char buf[80];
  for (std::size_t k = 0; k < trace.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", trace.times[k], trace.values[k]);
    out << buf;
  }
}

FidelityTrace read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,fidelity") {
    throw ValidationError("trace file: expected header 't,fidelity'");
  }
  FidelityTrace trace;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("trace file: row " + std::to_string(row) + " has no comma");
    }
    char* end = nullptr;
    const double t = std::strtod(line.c_str(), &end);
    const bool t_ok = end == line.c_str() + comma;
    const double f = std::strtod(line.c_str() + comma + 1, &end);
    if (!t_ok || *end != '\0') {
      throw ValidationError("trace file: row " + std::to_string(row) + " is not two numbers");
    }
    trace.times.push_back(t);
    trace.values.push_back(f);
  }
  check_time_grid(trace.times);
  return trace;
}

}  // namespace spinstar::cli
