#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "forcecert/errors.hpp"
#include "forcecert/fields/field.hpp"
#include "forcecert/graphs/graph_io.hpp"
#include "forcecert/matrices/weighted.hpp"

// Certificate documents are JSON objects with a fixed key order:
//   schema, kind ("involutory" | "pair"), field, graph (graph file lines),
//   rows, cols (vertex labels), B, then Binv or C (rows of scalar strings).

namespace forcecert {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kCertificateSchema = "forcecert-certificate/1";

namespace detail {

inline OrderedJson graph_lines(const BipartiteGraph& g) {
  OrderedJson lines = OrderedJson::array();
  const std::string text = write_graph(g);
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

template <Field F>
OrderedJson matrix_json(const Matrix<F>& m) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline OrderedJson labels_json(const BipartiteGraph& g, const std::vector<Vertex>& vs) {
  OrderedJson out = OrderedJson::array();
  for (Vertex v : vs) out.push_back(g.label(v));
  return out;
}

template <Field F>
OrderedJson header(const char* kind, const WeightedBiAdjacency<F>& b) {
  OrderedJson doc;
  doc["schema"] = kCertificateSchema;
  doc["kind"] = kind;
  doc["field"] = describe(b.matrix().field());
  doc["graph"] = graph_lines(b.host());
  doc["rows"] = labels_json(b.host(), b.row_order());
  doc["cols"] = labels_json(b.host(), b.col_order());
  doc["B"] = matrix_json(b.matrix());
  return doc;
}

inline OrderedJson parse_document(std::string_view text, const char* kind) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || doc.value("schema", "") != kCertificateSchema) {
    throw ParseError("certificate has no '" + std::string(kCertificateSchema) + "' schema tag", 0);
  }
  if (doc.value("kind", "") != kind) throw ParseError(std::string("certificate kind is not '") + kind + "'", 0);
  return doc;
}

template <Field F>
Matrix<F> read_matrix(const OrderedJson& rows, const typename F::field_type& f, std::size_t r, std::size_t c,
                      const char* name) {
  if (!rows.is_array() || rows.size() != r) throw ParseError(std::string("matrix ") + name + " has the wrong row count", 0);
  Matrix<F> m(r, c, f);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) {
      throw ParseError(std::string("matrix ") + name + " row " + std::to_string(i) + " has the wrong length", 0);
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (!rows[i][j].is_string()) throw ParseError(std::string("matrix ") + name + " entries must be strings", 0);
      m.set(i, j, parse_scalar(f, rows[i][j].template get<std::string>()));
    }
  }
  return m;
}

template <Field F>
WeightedBiAdjacency<F> read_b(const OrderedJson& doc, const typename F::field_type& f) {
  if (doc.value("field", "") != describe(f)) {
    throw FieldMismatch("certificate is over " + doc.value("field", std::string("?")) + ", expected " + describe(f));
  }
  std::string text;
  for (const auto& line : doc.at("graph")) text += line.template get<std::string>() + "\n";
  GraphPtr host = share(read_graph(text));
  auto ids = [&](const char* key) {
    std::vector<Vertex> out;
    for (const auto& l : doc.at(key)) out.push_back(host->at(l.template get<std::string>()));
    return out;
  };
  std::vector<Vertex> rows = ids("rows");
  std::vector<Vertex> cols = ids("cols");
  Matrix<F> b = read_matrix<F>(doc.at("B"), f, rows.size(), cols.size(), "B");
  return WeightedBiAdjacency<F>(std::move(host), std::move(rows), std::move(cols), std::move(b));
}

}  // namespace detail

template <Field F>
std::string write_certificate(const InvolutoryCertificate<F>& cert) {
  OrderedJson doc = detail::header("involutory", cert.b);
  doc["Binv"] = detail::matrix_json(cert.b_inv);
  return doc.dump(2) + "\n";
}

template <Field F>
std::string write_certificate(const RowInversePair<F>& pair) {
  OrderedJson doc = detail::header("pair", pair.b);
  doc["C"] = detail::matrix_json(pair.c.matrix());
  return doc.dump(2) + "\n";
}

/// Field descriptor of a certificate document, for dispatch before reading.
inline FieldDescriptor certificate_field(std::string_view text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("field") || !doc["field"].is_string()) throw ParseError("certificate has no field", 0);
  return parse_field(doc["field"].get<std::string>());
}

inline std::string certificate_kind(std::string_view text) {
  try {
    return OrderedJson::parse(text).value("kind", "");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what(), 0);
  }
}

/// Reads an involutory certificate. The caller verifies it with
/// verify_certificate.
template <Field F>
InvolutoryCertificate<F> read_involutory(std::string_view text, const typename F::field_type& f) {
  OrderedJson doc = detail::parse_document(text, "involutory");
  try {
    WeightedBiAdjacency<F> b = detail::read_b<F>(doc, f);
    Matrix<F> b_inv = detail::read_matrix<F>(doc.at("Binv"), f, b.matrix().cols(), b.matrix().rows(), "Binv");
    return {std::move(b), std::move(b_inv)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
}

template <Field F>
RowInversePair<F> read_pair(std::string_view text, const typename F::field_type& f) {
  OrderedJson doc = detail::parse_document(text, "pair");
  try {
    WeightedBiAdjacency<F> b = detail::read_b<F>(doc, f);
    Matrix<F> c = detail::read_matrix<F>(doc.at("C"), f, b.matrix().rows(), b.matrix().cols(), "C");
    WeightedBiAdjacency<F> cw(b.host_ptr(), b.row_order(), b.col_order(), std::move(c));
    return {std::move(b), std::move(cw)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
  }
}

}  // namespace forcecert
