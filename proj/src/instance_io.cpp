#include "pottsmix/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pottsmix {

using nlohmann::ordered_json;

void atomic_write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

std::string instance_to_json(const MrfInstance& inst) {
  ordered_json j;
  j["n"] = inst.n;
  j["k"] = inst.k;
  if (inst.n <= 64) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < inst.n; ++i) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < inst.n; ++c) row.push_back(inst.A(i, c));
      rows.push_back(std::move(row));
    }
    j["A"] = std::move(rows);
  } else {
    ordered_json edges = ordered_json::array();
    for (int i = 0; i < inst.n; ++i)
      for (int c = i; c < inst.n; ++c)
        if (inst.A(i, c) != 0.0)
          edges.push_back(ordered_json::array({i, c, inst.A(i, c)}));
    j["edges"] = std::move(edges);
  }
  ordered_json hrows = ordered_json::array();
  for (int i = 0; i < inst.n; ++i) {
    ordered_json row = ordered_json::array();
    for (int l = 0; l < inst.k; ++l) row.push_back(inst.H(i, l));
    hrows.push_back(std::move(row));
  }
  j["H"] = std::move(hrows);
  return j.dump(2) + "\n";
}

MrfInstance instance_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("instance JSON parse error: ") +
                             e.what());
  }
  if (!j.contains("n") || !j.contains("k") || !j.contains("H"))
    throw std::runtime_error("instance JSON: missing required field");
  const int n = j.at("n").get<int>();
  const int k = j.at("k").get<int>();
  if (n < 1 || k < 2)
    throw std::runtime_error("instance JSON: invalid n or k");

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  if (j.contains("A")) {
    const auto& rows = j.at("A");
    if (static_cast<int>(rows.size()) != n)
      throw std::runtime_error("instance JSON: A has wrong row count");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw std::runtime_error("instance JSON: A has wrong column count");
      for (int c = 0; c < n; ++c) A(i, c) = rows[i][c].get<double>();
    }
  } else if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (e.size() != 3)
        throw std::runtime_error("instance JSON: edge must be [i, j, w]");
      const int i = e[0].get<int>();
      const int c = e[1].get<int>();
      if (i < 0 || i >= n || c < 0 || c >= n)
        throw std::runtime_error("instance JSON: edge index out of range");
      const double w = e[2].get<double>();
      A(i, c) = w;
      A(c, i) = w;
    }
  } else {
    throw std::runtime_error("instance JSON: needs either A or edges");
  }

  const auto& hrows = j.at("H");
  if (static_cast<int>(hrows.size()) != n)
    throw std::runtime_error("instance JSON: H has wrong row count");
  Eigen::MatrixXd H(n, k);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(hrows[i].size()) != k)
      throw std::runtime_error("instance JSON: H has wrong column count");
    for (int l = 0; l < k; ++l) H(i, l) = hrows[i][l].get<double>();
  }
  return symmetrize_and_validate(A, H, k);
}

MrfInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

void save_instance(const MrfInstance& inst, const std::string& path) {
  atomic_write_file(path, instance_to_json(inst));
}

}  // namespace pottsmix
