#include "params.hpp"

#include "gadgetlab/errors.hpp"

namespace gadgetlab::cli {

using nlohmann::json;

Params::Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
  if (!j_.is_object()) throw InvalidInput(where_ + " must be an object");
}

bool Params::has(const std::string& key) {
  seen_.insert(key);
  return j_.contains(key);
}

const json& Params::at(const std::string& key) {
  seen_.insert(key);
  if (!j_.contains(key)) fail(key, "is required");
  return j_.at(key);
}

void Params::fail(const std::string& key, const std::string& what) const {
  throw InvalidInput(where_ + "." + key + " " + what);
}

double Params::number(const std::string& key) {
  const json& v = at(key);
  if (!v.is_number()) fail(key, "must be a number");
  return v.get<double>();
}

double Params::number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

int Params::integer(const std::string& key) {
  const json& v = at(key);
  if (!v.is_number_integer()) fail(key, "must be an integer");
  return v.get<int>();
}

int Params::integer(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

std::string Params::text(const std::string& key) {
  const json& v = at(key);
  if (!v.is_string()) fail(key, "must be a string");
  return v.get<std::string>();
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  return has(key) ? text(key) : fallback;
}

std::vector<double> Params::numbers(const std::string& key) {
  const json& v = at(key);
  if (!v.is_array()) fail(key, "must be an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) fail(key, "must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<int> Params::integers(const std::string& key) {
  const json& v = at(key);
  if (!v.is_array()) fail(key, "must be an array of integers");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) fail(key, "must be an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::string> Params::texts(const std::string& key) {
  const json& v = at(key);
  if (!v.is_array()) fail(key, "must be an array of strings");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string()) fail(key, "must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::pair<double, double> Params::interval(const std::string& key, std::pair<double, double> fallback) {
  if (!has(key)) return fallback;
  const std::vector<double> v = numbers(key);
  if (v.size() != 2 || !(v[0] <= v[1])) fail(key, "must be [low, high] with low <= high");
  return {v[0], v[1]};
}

const json& Params::raw(const std::string& key) { return at(key); }

Params Params::object(const std::string& key) { return Params(at(key), where_ + "." + key); }

void Params::finish() const {
  for (const auto& [key, value] : j_.items()) {
    if (!seen_.contains(key)) throw InvalidInput("unknown key '" + key + "' in " + where_);
  }
}

}  // namespace gadgetlab::cli
