#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace avm {

/// Binary opinion carried by every agent. Zero < One.
enum class Opinion : std::uint8_t { Zero = 0, One = 1 };

constexpr Opinion flip(Opinion o) noexcept {
  return o == Opinion::One ? Opinion::Zero : Opinion::One;
}

constexpr const char* to_string(Opinion o) noexcept {
  return o == Opinion::One ? "One" : "Zero";
}

/// Dense handles. Never reused within a run (nothing is ever deleted).
enum class AgentId : std::uint32_t {};
enum class GroupId : std::uint32_t {};

inline constexpr GroupId kNoGroup{std::numeric_limits<std::uint32_t>::max()};
inline constexpr AgentId kNoAgent{std::numeric_limits<std::uint32_t>::max()};

constexpr std::size_t index(AgentId a) noexcept { return static_cast<std::size_t>(a); }
constexpr std::size_t index(GroupId g) noexcept { return static_cast<std::size_t>(g); }
constexpr AgentId agent(std::size_t i) noexcept { return AgentId{static_cast<std::uint32_t>(i)}; }
constexpr GroupId group(std::size_t i) noexcept { return GroupId{static_cast<std::uint32_t>(i)}; }

/// Pattern counts maintained incrementally by VoterGraph.
struct PatternCounts {
  std::int64_t n_one = 0;   // agents with opinion One
  std::int64_t n_zero = 0;  // agents with opinion Zero
  std::int64_t n_11 = 0;    // One-One groups
  std::int64_t n_01 = 0;    // discordant groups
  std::int64_t n_00 = 0;    // Zero-Zero groups

  std::int64_t n_agents() const noexcept { return n_one + n_zero; }
  std::int64_t n_groups() const noexcept { return n_11 + n_01 + n_00; }
  std::int64_t n_with(Opinion o) const noexcept { return o == Opinion::One ? n_one : n_zero; }

  friend bool operator==(const PatternCounts&, const PatternCounts&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid graph construction or edit.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Invalid engine, generator or sweep configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A match that is no longer admissible in the current graph.
class StaleMatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace avm
