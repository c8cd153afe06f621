// Copyright 2026 The qdil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdil/outcome.hpp"

#include <set>

#include "qdil/error.hpp"

namespace qdil {

Event Event::atom(std::size_t n_atoms, std::size_t i) {
  Event e(n_atoms);
  e.set(i);
  return e;
}

Event Event::from_indices(std::size_t n_atoms, const std::vector<std::size_t>& idx) {
  Event e(n_atoms);
  for (auto i : idx) {
    if (i >= n_atoms) throw Error(ErrorKind::UnknownLabel, "event index out of range");
    e.set(i);
  }
  return e;
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

std::size_t Event::count() const {
  std::size_t c = 0;
  for (bool b : mask_) c += b;
  return c;
}

Event Event::operator|(const Event& o) const {
  if (o.universe() != universe())
    throw Error(ErrorKind::Dimension, "events over different outcome sets");
  Event e(universe());
  for (std::size_t i = 0; i < universe(); ++i) e.mask_[i] = mask_[i] || o.mask_[i];
  return e;
}

Event Event::operator&(const Event& o) const {
  if (o.universe() != universe())
    throw Error(ErrorKind::Dimension, "events over different outcome sets");
  Event e(universe());
  for (std::size_t i = 0; i < universe(); ++i) e.mask_[i] = mask_[i] && o.mask_[i];
  return e;
}

Event Event::operator~() const {
  Event e(universe());
  for (std::size_t i = 0; i < universe(); ++i) e.mask_[i] = !mask_[i];
  return e;
}

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "outcome space must be nonempty");
  }
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw Error(ErrorKind::InvalidArgument, "outcome labels must be distinct");
  }
}

OutcomeSpace OutcomeSpace::numbered(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(std::to_string(i));
  return OutcomeSpace(std::move(l));
}

std::size_t OutcomeSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw Error(ErrorKind::UnknownLabel, "unknown outcome label '" + label + "'");
}

Event OutcomeSpace::atom(const std::string& label) const {
  return Event::atom(size(), index_of(label));
}

Event OutcomeSpace::event(const std::vector<std::string>& labels) const {
  Event e(size());
  for (const auto& l : labels) e.set(index_of(l));
  return e;
}

void OutcomeSpace::check(const Event& e) const {
  if (e.universe() != size()) {
    throw Error(ErrorKind::UnknownLabel, "event refers to a different outcome set");
  }
}

}  // namespace qdil
