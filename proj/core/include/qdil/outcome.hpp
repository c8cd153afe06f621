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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qdil {

/** A subset of a finite outcome set, as a membership mask over atoms. */
class Event {
 public:
  Event() = default;
  explicit Event(std::size_t n_atoms, bool all = false)
      : mask_(n_atoms, all) {}
  static Event atom(std::size_t n_atoms, std::size_t i);
  static Event from_indices(std::size_t n_atoms, const std::vector<std::size_t>& idx);

  std::size_t universe() const { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_.at(i); }
  void set(std::size_t i, bool v = true) { mask_.at(i) = v; }
  std::vector<std::size_t> members() const;
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == mask_.size(); }

  Event operator|(const Event& o) const;
  Event operator&(const Event& o) const;
  Event operator~() const;
  bool operator==(const Event& o) const = default;
  bool operator<(const Event& o) const { return mask_ < o.mask_; }

 private:
  std::vector<bool> mask_;
};

/** Ordered, distinct atom labels; 𝓕 is the power set. */
class OutcomeSpace {
 public:
  OutcomeSpace() = default;
  explicit OutcomeSpace(std::vector<std::string> labels);
  /** Labels "0", "1", ..., "n-1". */
  static OutcomeSpace numbered(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /** Throws UnknownLabel. */
  std::size_t index_of(const std::string& label) const;

  Event atom(const std::string& label) const;
  Event atom(std::size_t i) const { return Event::atom(size(), i); }
  Event event(const std::vector<std::string>& labels) const;
  Event whole() const { return Event(size(), true); }
  Event none() const { return Event(size(), false); }
  /** Throws UnknownLabel if the event lives on a different outcome set. */
  void check(const Event& e) const;

  bool operator==(const OutcomeSpace& o) const = default;

 private:
  std::vector<std::string> labels_;
};

}  // namespace qdil
