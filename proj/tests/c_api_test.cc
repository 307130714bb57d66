#include "probclone.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

extern "C" int c_api_smoke(void);

namespace {

struct StateFree {
  void operator()(pclone_state* s) const { pclone_state_free(s); }
};
struct MachineFree {
  void operator()(pclone_machine* m) const { pclone_machine_free(m); }
};
using State = std::unique_ptr<pclone_state, StateFree>;
using Machine = std::unique_ptr<pclone_machine, MachineFree>;

State make_state(std::vector<double> re_im) {
  pclone_state* raw = nullptr;
  EXPECT_EQ(pclone_state_create(re_im.data(), re_im.size() / 2, 0, &raw), PCLONE_OK)
      << pclone_last_error();
  return State(raw);
}

Machine make_machine(double s) {
  State a = make_state({1, 0, 0, 0});
  State b = make_state({s, 0, std::sqrt(1 - s * s), 0});
  pclone_machine* raw = nullptr;
  EXPECT_EQ(pclone_machine_build(a.get(), b.get(), nullptr, nullptr, &raw), PCLONE_OK)
      << pclone_last_error();
  return Machine(raw);
}

TEST(CApiTest, PlainCClientWorks) { EXPECT_EQ(c_api_smoke(), 0); }

TEST(CApiTest, Metadata) {
  EXPECT_STREQ(pclone_version(), "0.1.0");
  EXPECT_STREQ(pclone_generator_id(), "splitmix64-counter-v1");
  EXPECT_STREQ(pclone_status_name(PCLONE_OK), "ok");
  EXPECT_STREQ(pclone_status_name(PCLONE_ERR_VERIFY), "verification");
  EXPECT_EQ(PCLONE_ERR_USAGE, 1);
  EXPECT_EQ(PCLONE_ERR_DOMAIN, 2);
  EXPECT_EQ(PCLONE_ERR_VERIFY, 3);
}

TEST(CApiTest, StateLifecycle) {
  const double amps[] = {0.6, 0.0, 0.0, 0.8};
  pclone_state* raw = nullptr;
  ASSERT_EQ(pclone_state_create(amps, 2, 0, &raw), PCLONE_OK);
  State s(raw);
  EXPECT_EQ(pclone_state_dim(s.get()), 2u);
  double out[4];
  ASSERT_EQ(pclone_state_amplitudes(s.get(), out, 2), PCLONE_OK);
  EXPECT_EQ(std::memcmp(out, amps, sizeof amps), 0);
  EXPECT_EQ(pclone_state_amplitudes(s.get(), out, 1), PCLONE_ERR_USAGE);

  const double loose[] = {2.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(pclone_state_create(loose, 2, 0, &raw), PCLONE_ERR_DOMAIN);
  EXPECT_NE(std::string(pclone_last_error()).find("normalized"), std::string::npos);
  ASSERT_EQ(pclone_state_create(loose, 2, 1, &raw), PCLONE_OK);
  State fixed(raw);
  ASSERT_EQ(pclone_state_amplitudes(fixed.get(), out, 2), PCLONE_OK);
  EXPECT_EQ(out[0], 1.0);

  EXPECT_EQ(pclone_state_create(nullptr, 2, 0, &raw), PCLONE_ERR_USAGE);
  EXPECT_EQ(pclone_state_create(amps, 0, 0, &raw), PCLONE_ERR_DIMENSION);
  pclone_state_free(nullptr);
}

TEST(CApiTest, StateJsonWarning) {
  pclone_state* raw = nullptr;
  char* warning = nullptr;
  ASSERT_EQ(pclone_state_parse_json(R"({"dim":2,"amplitudes":[[1.000001,0],[0,0]]})", &raw,
                                    &warning),
            PCLONE_OK);
  State s(raw);
  ASSERT_NE(warning, nullptr);
  EXPECT_NE(std::string(warning).find("renormalized"), std::string::npos);
  pclone_string_free(warning);

  EXPECT_EQ(pclone_state_parse_json("not json", &raw, nullptr), PCLONE_ERR_USAGE);
  EXPECT_EQ(pclone_state_read_file("/nonexistent.json", &raw, nullptr), PCLONE_ERR_USAGE);
}

TEST(CApiTest, MachineInfoAndPostselect) {
  Machine m = make_machine(1.0 / 3.0);
  pclone_machine_info info{};
  ASSERT_EQ(pclone_machine_get_info(m.get(), &info), PCLONE_OK);
  EXPECT_EQ(info.system_dim, 2u);
  EXPECT_EQ(info.total_dim, 8u);
  EXPECT_NEAR(info.eta, 0.75, 1e-12);
  EXPECT_NEAR(info.a00, std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_LE(info.unitarity_residual, 1e-10);

  std::vector<double> u(2 * 64);
  ASSERT_EQ(pclone_machine_unitary(m.get(), u.data(), 64), PCLONE_OK);
  EXPECT_NEAR(u[0], std::sqrt(3.0) / 2.0, 1e-10);  // <000|U|000>
  EXPECT_NEAR(u[2 * 8], 0.5, 1e-10);               // <001|U|000>

  for (int label : {0, 1}) {
    pclone_state* raw = nullptr;
    ASSERT_EQ(pclone_machine_designated(m.get(), label, &raw), PCLONE_OK);
    State in(raw);
    pclone_clone_outcome out{};
    ASSERT_EQ(pclone_machine_postselect(m.get(), in.get(), &out), PCLONE_OK);
    EXPECT_NEAR(out.probability, 0.75, 1e-10);
    EXPECT_GE(out.clone_fidelity, 1 - 1e-10);
  }
  pclone_state* raw = nullptr;
  EXPECT_EQ(pclone_machine_designated(m.get(), 2, &raw), PCLONE_ERR_DOMAIN);
}

TEST(CApiTest, BuildErrorsHaveDistinctCodes) {
  State a = make_state({1, 0, 0, 0});
  State three = make_state({1, 0, 0, 0, 0, 0});
  pclone_machine* raw = nullptr;
  EXPECT_EQ(pclone_machine_build(a.get(), a.get(), nullptr, nullptr, &raw), PCLONE_ERR_DOMAIN);
  EXPECT_EQ(pclone_machine_build(a.get(), three.get(), nullptr, nullptr, &raw),
            PCLONE_ERR_DIMENSION);
  EXPECT_EQ(pclone_machine_build(nullptr, a.get(), nullptr, nullptr, &raw), PCLONE_ERR_USAGE);
  EXPECT_EQ(pclone_machine_parse_json("{}", &raw), PCLONE_ERR_USAGE);
}

TEST(CApiTest, MachineJsonRoundTrip) {
  Machine m = make_machine(0.4);
  char* text = nullptr;
  ASSERT_EQ(pclone_machine_to_json(m.get(), &text), PCLONE_OK);
  pclone_machine* raw = nullptr;
  ASSERT_EQ(pclone_machine_parse_json(text, &raw), PCLONE_OK);
  Machine back(raw);
  char* again = nullptr;
  ASSERT_EQ(pclone_machine_to_json(back.get(), &again), PCLONE_OK);
  EXPECT_STREQ(text, again);
  pclone_string_free(text);
  pclone_string_free(again);
}

TEST(CApiTest, SimulateIsDeterministic) {
  Machine m = make_machine(0.5);
  pclone_sim_report a{};
  pclone_sim_report b{};
  ASSERT_EQ(pclone_simulate(m.get(), 1, 50000, 9, 1, &a), PCLONE_OK);
  ASSERT_EQ(pclone_simulate(m.get(), 1, 50000, 9, 4, &b), PCLONE_OK);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_EQ(a.z_score, b.z_score);
  EXPECT_EQ(a.seed, 9u);
  EXPECT_EQ(a.input_label, 1);
  EXPECT_NEAR(a.analytic_eta, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(pclone_simulate(m.get(), 0, 0, 9, 1, &a), PCLONE_ERR_USAGE);
  EXPECT_EQ(pclone_simulate(m.get(), 3, 10, 9, 1, &a), PCLONE_ERR_USAGE);
}

TEST(CApiTest, FilterDemoAndBounds) {
  pclone_filter_report f{};
  ASSERT_EQ(pclone_filter_demo(&f), PCLONE_OK);
  EXPECT_NEAR(f.fidelity_before, 0.5, 1e-12);
  EXPECT_NEAR(f.fidelity_after, 0.0, 1e-12);
  EXPECT_EQ(f.monotonicity_violated, 1);

  double v = 0;
  ASSERT_EQ(pclone_universal_bound(0.5, &v), PCLONE_OK);
  EXPECT_NEAR(v, 2.0 / 3.0, 1e-15);
  ASSERT_EQ(pclone_mean_efficiency_bound(0.5, 0.0, &v), PCLONE_OK);
  EXPECT_NEAR(v, 0.5, 1e-15);
  EXPECT_EQ(pclone_universal_bound(1.2, &v), PCLONE_ERR_DOMAIN);

  int ok = -1;
  ASSERT_EQ(pclone_check_no_perfect_cloning(0.5, 1, 1, 1, &ok), PCLONE_OK);
  EXPECT_EQ(ok, 0);
  ASSERT_EQ(pclone_check_no_perfect_cloning(0.5, 2.0 / 3.0, 2.0 / 3.0, 1, &ok), PCLONE_OK);
  EXPECT_EQ(ok, 1);
}

TEST(CApiTest, VerifyReportsFailingChecks) {
  Machine m = make_machine(1.0 / 3.0);
  pclone_verify_report r{};
  ASSERT_EQ(pclone_verify(m.get(), nullptr, &r), PCLONE_OK);
  EXPECT_EQ(r.passed, 1);
  EXPECT_EQ(r.golden_checked, 1);
  EXPECT_EQ(r.bounds.saturated, 1);
  EXPECT_STREQ(r.failed_checks, "");

  pclone_verify_tolerances t{};
  pclone_verify_default_tolerances(&t);
  EXPECT_EQ(t.unitarity, 1e-10);
  EXPECT_EQ(t.gram, 1e-9);
  t.unitarity = 0.0;
  t.mapping = 0.0;
  t.golden = 0.0;
  EXPECT_EQ(pclone_verify(m.get(), &t, &r), PCLONE_ERR_VERIFY);
  EXPECT_EQ(r.passed, 0);
  EXPECT_GT(std::strlen(r.failed_checks), 0u);
}

}  // namespace
