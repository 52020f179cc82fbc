#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace gadgetlab::cli {

// Typed access to one JSON object. Every key read is recorded so that
// finish() can reject the ones nobody asked for.
class Params {
 public:
  Params(const nlohmann::json& j, std::string where);

  bool has(const std::string& key);
  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  int integer(const std::string& key);
  int integer(const std::string& key, int fallback);
  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key);
  std::vector<int> integers(const std::string& key);
  std::vector<std::string> texts(const std::string& key);
  std::pair<double, double> interval(const std::string& key, std::pair<double, double> fallback);
  const nlohmann::json& raw(const std::string& key);
  Params object(const std::string& key);

  void finish() const;
  const std::string& where() const { return where_; }

 private:
  const nlohmann::json& at(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  const nlohmann::json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

}  // namespace gadgetlab::cli
