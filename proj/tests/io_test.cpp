#include <gtest/gtest.h>

#include <string>

#include "forcecert/matrices/certificate_io.hpp"
#include "forcecert/matrices/constructions.hpp"

namespace forcecert {
namespace {

template <Field F>
void expect_same(const WeightedBiAdjacency<F>& a, const WeightedBiAdjacency<F>& b) {
  EXPECT_TRUE(a.host().same_structure(b.host()));
  ASSERT_EQ(a.row_order().size(), b.row_order().size());
  for (std::size_t i = 0; i < a.row_order().size(); ++i)
    EXPECT_EQ(a.host().label(a.row_order()[i]), b.host().label(b.row_order()[i]));
  for (std::size_t j = 0; j < a.col_order().size(); ++j)
    EXPECT_EQ(a.host().label(a.col_order()[j]), b.host().label(b.col_order()[j]));
  EXPECT_EQ(a.matrix(), b.matrix());
}

TEST(CertificateFile, InvolutoryRoundTripOverQ) {
  auto cert = s14_certificate();
  const std::string text = write_certificate(cert);
  auto back = read_involutory<Rational>(text, RationalField{});
  expect_same(cert.b, back.b);
  EXPECT_EQ(cert.b_inv, back.b_inv);
  EXPECT_TRUE(verify_certificate(back).ok);
  EXPECT_EQ(write_certificate(back), text);
  EXPECT_EQ(certificate_kind(text), "involutory");
  EXPECT_TRUE(std::holds_alternative<RationalField>(certificate_field(text)));
}

TEST(CertificateFile, InvolutoryRoundTripOverQuadraticField) {
  auto cert = gprime_certificate();
  const std::string text = write_certificate(cert);
  auto back = read_involutory<QuadraticElement>(text, QuadraticField(2));
  expect_same(cert.b, back.b);
  EXPECT_EQ(cert.b_inv, back.b_inv);
  EXPECT_EQ(write_certificate(back), text);
  EXPECT_EQ(describe(certificate_field(text)), "Qsqrt:2");
}

TEST(CertificateFile, PairRoundTripOverPrimeField) {
  auto pair = delete_rows(fourier_pair(4, 5), {"x3"});
  const std::string text = write_certificate(pair);
  auto back = read_pair<ModP>(text, PrimeField(5));
  expect_same(pair.b, back.b);
  expect_same(pair.c, back.c);
  EXPECT_TRUE(verify_certificate(back).ok);
  EXPECT_EQ(write_certificate(back), text);
  EXPECT_EQ(certificate_kind(text), "pair");
}

TEST(CertificateFile, KeyOrderIsFixed) {
  const std::string text = write_certificate(k22_certificate<Rational>(RationalField{}));
  const char* keys[] = {"\"schema\"", "\"kind\"", "\"field\"", "\"graph\"", "\"rows\"", "\"cols\"", "\"B\"", "\"Binv\""};
  std::size_t at = 0;
  for (const char* key : keys) {
    const std::size_t found = text.find(key, at);
    ASSERT_NE(found, std::string::npos) << key;
    at = found;
  }
}

TEST(CertificateFile, Rejections) {
  const std::string text = write_certificate(k22_certificate<Rational>(RationalField{}));
  EXPECT_THROW(read_involutory<Rational>("{not json", RationalField{}), ParseError);
  EXPECT_THROW(read_pair<Rational>(text, RationalField{}), ParseError);
  EXPECT_THROW(read_involutory<ModP>(text, PrimeField(7)), FieldMismatch);

  auto doc = OrderedJson::parse(text);
  doc["schema"] = "something-else";
  EXPECT_THROW(read_involutory<Rational>(doc.dump(), RationalField{}), ParseError);

  doc = OrderedJson::parse(text);
  doc["B"][0].erase(1);
  EXPECT_THROW(read_involutory<Rational>(doc.dump(), RationalField{}), ParseError);

  doc = OrderedJson::parse(text);
  doc["Binv"][0][0] = 3;
  EXPECT_THROW(read_involutory<Rational>(doc.dump(), RationalField{}), ParseError);

  doc = OrderedJson::parse(text);
  doc["B"][0][0] = "7/";
  EXPECT_THROW(read_involutory<Rational>(doc.dump(), RationalField{}), ParseError);
}

TEST(CertificateFile, TamperedWeightsFailVerification) {
  auto doc = OrderedJson::parse(write_certificate(k22_certificate<Rational>(RationalField{})));
  doc["Binv"][1][1] = "1/3";
  auto cert = read_involutory<Rational>(doc.dump(), RationalField{});
  EXPECT_FALSE(verify_certificate(cert).ok);
}

TEST(GraphFile, ProductRoundTrip) {
  BipartiteGraph g = parse_family("prod(Kmn:2,3;K2)");
  BipartiteGraph back = read_graph(write_graph(g));
  EXPECT_TRUE(g.same_structure(back));
  for (Vertex v = 0; v < g.order(); ++v) EXPECT_EQ(g.label(v), back.label(v));
  EXPECT_EQ(write_graph(back), write_graph(g));
}

}  // namespace
}  // namespace forcecert
