#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cli/design_file.hpp"
#include "cli/trace_file.hpp"
#include "spinstar/dynamics.hpp"

namespace spinstar::cli {
namespace {

void expect_same(const RoutingState& x, const RoutingState& y) {
  EXPECT_EQ(x.base.params, y.base.params);
  EXPECT_EQ(x.base.eta, y.base.eta);
  EXPECT_EQ(x.base.root, y.base.root);
  EXPECT_EQ(x.base.transfer_time, y.base.transfer_time);
  EXPECT_EQ(x.base.target_spectrum, y.base.target_spectrum);
  EXPECT_EQ(x.base.root_residual, y.base.root_residual);
  EXPECT_EQ(x.base.lambda_residual, y.base.lambda_residual);
  EXPECT_EQ(x.base.realized, y.base.realized);
  EXPECT_EQ(x.source, y.source);
  EXPECT_EQ(x.target, y.target);
  EXPECT_EQ(x.realized_spec, y.realized_spec);
}

TEST(DesignFile, RoundTripIsExact) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> mdist(1, 300);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = mdist(rng);
    const RootChoice root = trial % 3 == 0 ? RootChoice::largest()
                            : trial % 3 == 1 ? RootChoice::smallest()
                                             : RootChoice::at(1);
    RoutingState state = route(design({m, min_feasible_even_eta(m) + 2 * (trial % 2), root}));
    if (trial % 4 == 0) state = retarget(state, static_cast<NodeIndex>(m + 2));
    const std::string text = serialize_design(state);
    expect_same(parse_design(text), state);
    EXPECT_EQ(serialize_design(parse_design(text)), text);
  }
}

TEST(DesignFile, SeventeenSignificantDigits) {
  const std::string text = serialize_design(route(design({2, 4, RootChoice::smallest()})));
  EXPECT_NE(text.find("\"e\": 5.1639777949432220e-01"), std::string::npos) << text;
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
}

std::string good_text() { return serialize_design(route(design({2, 4, RootChoice::smallest()}))); }

void expect_field_error(const std::string& text, const std::string& field) {
  try {
    parse_design(text);
    FAIL() << "expected failure naming " << field;
  } catch (const DesignFileError& e) {
    EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
  }
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(DesignFile, DiagnosticsNameTheField) {
  const std::string ok = good_text();
  expect_field_error(replace(ok, "\"schema_version\": 1", "\"schema_version\": 2"), "schema_version");
  expect_field_error(replace(ok, "\"eta\": 4", "\"eta\": 3"), "eta");
  expect_field_error(replace(ok, "\"root_choice\": \"smallest\"", "\"root_choice\": \"both\""),
                     "root_choice");
  expect_field_error(replace(ok, "\"tau\"", "\"tau_\""), "tau");
  expect_field_error(replace(ok, "\"edge_count\": 4", "\"edge_count\": 5"), "realized.edge_count");
  expect_field_error(replace(ok, "\"target\": 2", "\"target\": 1"), "realized.target");
  expect_field_error(replace(ok, "\"a\": ", "\"a\": \"x\", \"unused\": "), "a");
  expect_field_error(replace(ok, "\"lambda\"", "\"lambda_\""), "residuals.lambda");
  EXPECT_THROW(parse_design("{not json"), DesignFileError);
  EXPECT_THROW(parse_design("[]"), DesignFileError);
  EXPECT_THROW(read_design_file("/nonexistent/design.json"), DesignFileError);
}

TEST(TraceFile, RoundTripAndValidation) {
  FidelityTrace trace;
  trace.times = uniform_grid(3.0, 7);
  for (double t : trace.times) trace.values.push_back(std::sin(t) * std::sin(t));
  std::stringstream buf;
  write_trace(buf, trace);
  const FidelityTrace back = read_trace(buf);
  EXPECT_EQ(back.times, trace.times);
  EXPECT_EQ(back.values, trace.values);

  std::stringstream bad_header("time,f\n0,0\n");
  EXPECT_THROW(read_trace(bad_header), ValidationError);
  std::stringstream not_increasing("t,fidelity\n1,0\n1,0\n");
  EXPECT_THROW(read_trace(not_increasing), ValidationError);
  std::stringstream garbage("t,fidelity\n1;0\n");
  EXPECT_THROW(read_trace(garbage), ValidationError);
}

}  // namespace
}  // namespace spinstar::cli
