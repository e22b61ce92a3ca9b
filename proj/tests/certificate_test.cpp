// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.

#include <gtest/gtest.h>

#include <vector>

#include "balansol/certificate.hpp"
#include "balansol/config_lp.hpp"
#include "balansol/errors.hpp"
#include "balansol/graph.hpp"
#include "balansol/oracle.hpp"
#include "balansol/search_general.hpp"
#include "balansol/search_simple.hpp"

namespace balansol {
namespace {

Graph single_edge() { return Graph(2, {{0, 0, 1, Rat(1)}}); }

Graph three_parallel_units() { return make_parallel(3, Rat(1)); }

// A tiny edge pending into a nearly full vertex, with every other edge
// pinned by loops: stalls with a saturated entry whose target earns the
// tiny-flip credit.
Graph critical_probe() {
  return Graph(3, {{0, 0, 1, Rat(1, 4)},
                   {1, 0, 0, Rat(1, 2)},
                   {2, 0, 0, Rat(1, 2)},
                   {3, 0, 2, Rat(1)},
                   {4, 1, 1, Rat(1, 2)},
                   {5, 1, 1, Rat(1, 2)},
                   {6, 1, 1, Rat(1, 2)},
                   {7, 2, 2, Rat(1)},
                   {8, 2, 2, Rat(1)}});
}

TEST(VerifyCertificate, AcceptsAHandBuiltCertificate) {
  // Unit charges on three parallel unit edges beat capacities of one at
  // threshold 3/2: every configuration is a single edge.
  DualCertificate cert;
  cert.z = {Rat(1), Rat(1), Rat(1)};
  cert.y = {Rat(1), Rat(1)};
  const VerifyResult vr =
      verify_certificate(three_parallel_units(), Rat(3, 2), cert);
  EXPECT_TRUE(vr.accepted);
}

TEST(VerifyCertificate, RejectsShapeAndSignProblems) {
  DualCertificate wrong_size;
  wrong_size.z = {Rat(1)};
  wrong_size.y = {Rat(1), Rat(1)};
  EXPECT_FALSE(
      verify_certificate(three_parallel_units(), Rat(1), wrong_size).accepted);

  DualCertificate negative;
  negative.z = {Rat(-1)};
  negative.y = {Rat(0), Rat(0)};
  const VerifyResult vr = verify_certificate(single_edge(), Rat(1), negative);
  EXPECT_FALSE(vr.accepted);
  EXPECT_NE(vr.reason.find("negative edge charge"), std::string::npos);
}

TEST(VerifyCertificate, RejectsWithoutStrictAdvantage) {
  DualCertificate zero;
  zero.z = {Rat(0)};
  zero.y = {Rat(0), Rat(0)};
  const VerifyResult vr = verify_certificate(single_edge(), Rat(1, 2), zero);
  EXPECT_FALSE(vr.accepted);
  EXPECT_NE(vr.reason.find("strictly below"), std::string::npos);
}

TEST(Certify, GeneralCertificateForThreeParallelUnits) {
  const Graph g = three_parallel_units();
  const CertifyResult res = certify_infeasibility(g, Rat(1));
  ASSERT_EQ(res.status, CertifyStatus::Certified);
  ASSERT_TRUE(res.certificate.has_value());
  const DualCertificate& cert = *res.certificate;
  const std::vector<Rat> expect_z{Rat(1), Rat(749, 1000), Rat(749, 1000)};
  const std::vector<Rat> expect_y{Rat(186, 125), Rat(1)};
  EXPECT_EQ(cert.z, expect_z);
  EXPECT_EQ(cert.y, expect_y);
  EXPECT_EQ(dual_objective(cert.y, cert.z), Rat(-1, 100));
  ASSERT_TRUE(res.stuck.has_value());
  EXPECT_EQ(res.iterations, 1);
  // The same certificate must fail at the true fractional optimum.
  const VerifyResult at_opt = verify_certificate(g, Rat(2), cert);
  EXPECT_FALSE(at_opt.accepted);
  EXPECT_EQ(at_opt.vertex, 0);
  EXPECT_EQ(at_opt.config, (std::vector<int>{1, 2}));
}

TEST(Certify, SimpleCertificateForThreeParallelUnits) {
  const Graph g = three_parallel_units();
  const SearchOutcome out = run_simple(g, Rat(1));
  ASSERT_EQ(out.status, RunStatus::Stuck);
  const DualCertificate cert = build_simple_certificate(*out.stuck);
  const std::vector<Rat> expect_z{Rat(1), Rat(1), Rat(1)};
  const std::vector<Rat> expect_y{Rat(173, 100), Rat(63, 50)};
  EXPECT_EQ(cert.z, expect_z);
  EXPECT_EQ(cert.y, expect_y);
  EXPECT_TRUE(verify_certificate(g, Rat(1), cert).accepted);
  const VerifyResult at_opt = verify_certificate(g, Rat(2), cert);
  EXPECT_FALSE(at_opt.accepted);
  EXPECT_EQ(at_opt.vertex, 0);
  EXPECT_EQ(at_opt.config, (std::vector<int>{1, 2}));
}

TEST(Certify, SimpleCertificateGrantsTinyFlipCredit) {
  const Graph g = critical_probe();
  const Orientation init{0, 0, 0, 0, 1, 1, 1, 2, 2};
  const SearchOutcome out = run_simple_with_init(g, Rat(1), init);
  ASSERT_EQ(out.status, RunStatus::Stuck);
  EXPECT_EQ(out.iterations, 1);
  const StuckState& st = *out.stuck;
  ASSERT_EQ(st.pending.size(), 1u);
  EXPECT_EQ(st.pending[0].edge, 0);
  EXPECT_EQ(st.entry_critical[0], 1);
  EXPECT_EQ(st.entry_threshold[0], Rat(1, 4));
  EXPECT_EQ(st.vertex_critical[1], 1);
  EXPECT_EQ(st.vertex_tiny_target[1], 1);
  const DualCertificate cert = build_simple_certificate(st);
  const std::vector<Rat> expect_z{Rat(11, 40), Rat(1, 2), Rat(1, 2),
                                  Rat(1),     Rat(1, 2), Rat(1, 2),
                                  Rat(1, 2),  Rat(1),    Rat(1)};
  const std::vector<Rat> expect_y{Rat(453, 200), Rat(7, 5), Rat(199, 100)};
  EXPECT_EQ(cert.z, expect_z);
  EXPECT_EQ(cert.y, expect_y);
  EXPECT_EQ(dual_objective(cert.y, cert.z), Rat(-3, 25));
  EXPECT_TRUE(verify_certificate(g, Rat(1), cert).accepted);
  // This instance's fractional optimum is 2 (two unit loops share a
  // vertex); at 2 the certificate must fail.
  EXPECT_EQ(opt_star(g).value, Rat(2));
  EXPECT_FALSE(verify_certificate(g, Rat(2), cert).accepted);
}

TEST(Certify, RescalingKeepsTheCertificateValid) {
  const Graph g = three_parallel_units();
  const CertifyResult res = certify_infeasibility(g, Rat(9, 8));
  ASSERT_EQ(res.status, CertifyStatus::Certified);
  const DualCertificate& cert = *res.certificate;
  const std::vector<Rat> expect_z{Rat(9, 8), Rat(6741, 8000),
                                  Rat(6741, 8000)};
  const std::vector<Rat> expect_y{Rat(837, 500), Rat(9, 8)};
  EXPECT_EQ(cert.z, expect_z);
  EXPECT_EQ(cert.y, expect_y);
  EXPECT_EQ(dual_objective(cert.y, cert.z), Rat(-9, 800));
  EXPECT_TRUE(verify_certificate(g, Rat(9, 8), cert).accepted);
}

TEST(Certify, OverweightEdgeYieldsAnImmediateCertificate) {
  const CertifyResult res = certify_infeasibility(single_edge(), Rat(1, 2));
  ASSERT_EQ(res.status, CertifyStatus::Certified);
  EXPECT_FALSE(res.stuck.has_value());
  const std::vector<Rat> expect_z{Rat(1)};
  const std::vector<Rat> expect_y{Rat(0), Rat(0)};
  EXPECT_EQ(res.certificate->z, expect_z);
  EXPECT_EQ(res.certificate->y, expect_y);
}

TEST(Certify, SearchMayFinishBelowTheFractionalOptimum) {
  // At 3/2 the relaxation is infeasible, yet the search lands within its
  // budget of 1.749 * 3/2 and no certificate is produced.
  const Graph g = three_parallel_units();
  const CertifyResult res = certify_infeasibility(g, Rat(3, 2));
  EXPECT_EQ(res.status, CertifyStatus::NoCertificateDone);
  EXPECT_FALSE(res.lp_feasible_at_tau);
  EXPECT_LE(makespan(g, res.done_orientation),
            Rat(1749, 1000) * Rat(3, 2));
}

TEST(Certify, FeasibleThresholdProducesNoCertificate) {
  const CertifyResult res =
      certify_infeasibility(three_parallel_units(), Rat(2));
  EXPECT_EQ(res.status, CertifyStatus::NoCertificateDone);
  EXPECT_TRUE(res.lp_feasible_at_tau);
}

TEST(Certify, IterationCapIsReported) {
  const CertifyResult res = certify_infeasibility(three_parallel_units(),
                                                  Rat(1), /*iteration_cap=*/1);
  EXPECT_EQ(res.status, CertifyStatus::CapExceeded);
}

TEST(Certify, NaiveChargesFailOnThePathWithStubs) {
  // Charging every edge its own weight, with capacities equal to the
  // held charge, looks plausible but fails: the heaviest path edge
  // alone outweighs the capacity of the vertex holding the middle edge.
  const Graph g = make_path_big({Rat(1), Rat(17, 20), Rat(9, 10)}, 3);
  DualCertificate naive;
  naive.z.assign(9, Rat(0));
  for (const Edge& e : g.edges()) naive.z[e.id] = e.w;
  const Orientation orient{1, 2, 3, 0, 5, 6, 3, 8, 9};
  naive.y.assign(10, Rat(0));
  for (const Edge& e : g.edges()) naive.y[orient[e.id]] += naive.z[e.id];
  const VerifyResult vr = verify_certificate(g, Rat(1), naive);
  ASSERT_FALSE(vr.accepted);
  EXPECT_EQ(vr.vertex, 2);
  EXPECT_EQ(vr.config, (std::vector<int>{2}));
  // And rightly so: the fractional optimum here is exactly 1, so no
  // certificate at threshold 1 can be valid.
  EXPECT_EQ(opt_star(g).value, Rat(1));
  const CertifyResult res = certify_infeasibility(g, Rat(1));
  EXPECT_EQ(res.status, CertifyStatus::NoCertificateDone);
  EXPECT_TRUE(res.lp_feasible_at_tau);
}

TEST(Certify, BuildersRejectForeignOrLiveStates) {
  const Graph g = three_parallel_units();
  const SearchOutcome general = run_general(g, Rat(1));
  ASSERT_EQ(general.status, RunStatus::Stuck);
  EXPECT_THROW(build_simple_certificate(*general.stuck), InvariantError);
  StuckState live = *general.stuck;
  live.pending.clear();
  live.q_sets.clear();
  EXPECT_THROW(build_general_certificate(live), StuckStateError);
}

TEST(Certify, EdgelessGraphAtNegativeThreshold) {
  // With nothing to cover, the relaxation is trivially feasible at any
  // threshold, and there is nothing a certificate could charge.
  const Graph g(2, {});
  EXPECT_TRUE(lp_feasible(g, Rat(-1)).feasible);
  const CertifyResult res = certify_infeasibility(g, Rat(-1));
  EXPECT_EQ(res.status, CertifyStatus::NoCertificateDone);
  EXPECT_TRUE(res.lp_feasible_at_tau);
}

}  // namespace
}  // namespace balansol
