#include "wco/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wco {

DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<double> masses)
    : masses_(std::move(masses)) {
  if (masses_.empty()) throw InputError("measure space must have at least one point");
  for (Index j = 0; j < masses_.size(); ++j) {
    if (!std::isfinite(masses_[j]) || masses_[j] <= 0.0) {
      std::ostringstream msg;
      msg << "mass at point " << j << " must be strictly positive (got " << masses_[j]
          << ")";
      throw InputError(msg.str());
    }
  }
}

DiscreteMeasureSpace DiscreteMeasureSpace::unit(Index n) {
  return DiscreteMeasureSpace(std::vector<double>(n, 1.0));
}

double DiscreteMeasureSpace::total_mass() const noexcept {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

Transformation::Transformation(std::vector<Index> map) : map_(std::move(map)) {
  const Index n = map_.size();
  fibers_.assign(n, {});
  for (Index j = 0; j < n; ++j) {
    if (map_[j] >= n) {
      std::ostringstream msg;
      msg << "phi[" << j << "] = " << map_[j] << " is out of range 0.." << (n == 0 ? 0 : n - 1);
      throw InputError(msg.str());
    }
    fibers_[map_[j]].push_back(j);
  }
}

Transformation Transformation::identity(Index n) {
  std::vector<Index> map(n);
  std::iota(map.begin(), map.end(), Index{0});
  return Transformation(std::move(map));
}

bool Transformation::is_permutation() const noexcept {
  return std::all_of(fibers_.begin(), fibers_.end(),
                     [](const auto& f) { return f.size() == 1; });
}

Transformation Transformation::after(const Transformation& other) const {
  if (other.size() != size()) throw InputError("composing maps of different sizes");
  std::vector<Index> out(size());
  for (Index j = 0; j < size(); ++j) out[j] = map_[other.map_[j]];
  return Transformation(std::move(out));
}

WeightFunction::WeightFunction(std::vector<double> values) : values_(std::move(values)) {
  for (Index j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j]) || values_[j] < 0.0) {
      std::ostringstream msg;
      msg << "u[" << j << "] must be a nonnegative real (got " << values_[j] << ")";
      throw InputError(msg.str());
    }
  }
}

WeightFunction WeightFunction::constant(Index n, double c) {
  return WeightFunction(std::vector<double>(n, c));
}

bool PointSet::is_empty() const noexcept {
  return std::none_of(membership_.begin(), membership_.end(), [](bool b) { return b; });
}

Index PointSet::count() const noexcept {
  return static_cast<Index>(std::count(membership_.begin(), membership_.end(), true));
}

std::vector<Index> PointSet::members() const {
  std::vector<Index> out;
  for (Index j = 0; j < membership_.size(); ++j)
    if (membership_[j]) out.push_back(j);
  return out;
}

double PointSet::measure(const DiscreteMeasureSpace& space) const {
  double total = 0.0;
  for (Index j : members()) total += space.mass(j);
  return total;
}

PointSet PointSet::united(const PointSet& other) const {
  std::vector<bool> out(membership_);
  for (Index j = 0; j < out.size(); ++j) out[j] = out[j] || other.membership_.at(j);
  return PointSet(std::move(out));
}

bool PointSet::is_subset_of(const PointSet& other) const {
  for (Index j = 0; j < membership_.size(); ++j)
    if (membership_[j] && !other.membership_.at(j)) return false;
  return true;
}

WeightedSystem::WeightedSystem(DiscreteMeasureSpace s, Transformation t, WeightFunction w,
                               std::vector<Index> boundary_points)
    : space(std::move(s)), phi(std::move(t)), u(std::move(w)), boundary(std::move(boundary_points)) {
  const Index n = space.size();
  if (phi.size() != n || u.size() != n) {
    std::ostringstream msg;
    msg << "length mismatch: masses has " << n << " entries, phi has " << phi.size()
        << ", u has " << u.size();
    throw InputError(msg.str());
  }
  for (Index b : boundary)
    if (b >= n) throw InputError("boundary point " + std::to_string(b) + " is out of range");
}

namespace {

using nlohmann::json;

const json& require_array(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing array \"") + key + "\"");
  if (!it->is_array()) throw InputError(std::string("\"") + key + "\" must be an array");
  return *it;
}

std::vector<double> read_reals(const json& arr, const char* key, std::vector<std::string>& literals) {
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw InputError(std::string("\"") + key + "\"[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(arr[i].get<double>());
    // Shortest round-trip decimal form; equal to the literal for inputs with
    // at most 15 significant digits.
    literals.push_back(arr[i].dump());
  }
  return out;
}

std::vector<Index> read_indices(const json& arr, const char* key) {
  std::vector<Index> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& v = arr[i];
    bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
    if (v.is_number_float()) {
      const double d = v.get<double>();
      ok = d >= 0 && std::floor(d) == d;
    }
    if (!ok) {
      throw InputError(std::string("\"") + key + "\"[" + std::to_string(i) +
                       "] must be a nonnegative integer index");
    }
    out.push_back(static_cast<Index>(v.get<double>()));
  }
  return out;
}

}  // namespace

LoadedSystem load_space(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("input document must be a single object");

  SystemLiterals literals;
  auto masses = read_reals(require_array(doc, "masses"), "masses", literals.masses);
  auto phi = read_indices(require_array(doc, "phi"), "phi");
  auto u = read_reals(require_array(doc, "u"), "u", literals.u);
  std::vector<Index> boundary;
  if (doc.contains("boundary")) boundary = read_indices(require_array(doc, "boundary"), "boundary");

  if (masses.size() != phi.size() || masses.size() != u.size()) {
    std::ostringstream msg;
    msg << "length mismatch: masses has " << masses.size() << " entries, phi has " << phi.size()
        << ", u has " << u.size();
    throw InputError(msg.str());
  }
  WeightedSystem system(DiscreteMeasureSpace(std::move(masses)), Transformation(std::move(phi)),
                        WeightFunction(std::move(u)), std::move(boundary));
  return LoadedSystem{std::move(system), std::move(literals)};
}

LoadedSystem load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_space(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Transformation iterate_map(const Transformation& phi, unsigned n) {
  Transformation result = Transformation::identity(phi.size());
  for (unsigned k = 0; k < n; ++k) result = phi.after(result);
  return result;
}

PointSet preimage(const Transformation& phi, const PointSet& s) {
  PointSet out = PointSet::empty(phi.size());
  for (Index k : s.members())
    for (Index j : phi.fiber(k)) out.insert(j);
  return out;
}

bool is_backward_invariant(const Transformation& phi, const PointSet& s) {
  return preimage(phi, s).is_subset_of(s);
}

PointSet backward_closure(const Transformation& phi, Index j) {
  PointSet out = PointSet::empty(phi.size());
  std::deque<Index> queue{j};
  out.insert(j);
  while (!queue.empty()) {
    const Index k = queue.front();
    queue.pop_front();
    for (Index i : phi.fiber(k)) {
      if (!out.contains(i)) {
        out.insert(i);
        queue.push_back(i);
      }
    }
  }
  return out;
}

BackwardInvariantFamily backward_invariant_sets(const Transformation& phi, std::size_t cap) {
  std::set<PointSet> generators;
  for (Index j = 0; j < phi.size(); ++j) generators.insert(backward_closure(phi, j));

  BackwardInvariantFamily family;
  std::set<PointSet> seen;
  std::deque<PointSet> frontier;
  for (const auto& g : generators) {
    if (seen.size() >= cap) {
      family.truncated = true;
      break;
    }
    if (seen.insert(g).second) frontier.push_back(g);
  }
  while (!frontier.empty() && !family.truncated) {
    PointSet current = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : generators) {
      if (g.is_subset_of(current)) continue;
      PointSet next = current.united(g);
      if (seen.contains(next)) continue;
      if (seen.size() >= cap) {
        family.truncated = true;
        break;
      }
      seen.insert(next);
      frontier.push_back(std::move(next));
    }
  }

  family.sets.assign(seen.begin(), seen.end());
  std::stable_sort(family.sets.begin(), family.sets.end(),
                   [](const PointSet& a, const PointSet& b) { return a.count() < b.count(); });
  return family;
}

}  // namespace wco
