// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_DPOS_HPP
#define DPKI_DPOS_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dpki/bytes.hpp"

namespace dpki::dpos {

struct Vote {
    Pid voter_pid;
    Pid candidate_pid;
    std::uint64_t stake = 0;  // voter balance at vote time
};

inline constexpr std::size_t kMinDelegates = 1;
inline constexpr std::size_t kMaxDelegates = 100;

struct Eviction {
    Pid evicted;
    Pid replacement;
    std::size_t slot = 0;  // index in the delegate list
};

// Elected validator set and its rotation state. Slot order equals election
// rank and is preserved across evictions and identity substitutions.
class DelegateSchedule {
  public:
    DelegateSchedule() = default;
    DelegateSchedule(std::vector<Pid> delegates, std::vector<Pid> runner_ups,
                     std::unordered_map<Pid, std::uint64_t, PidHasher> stakes,
                     std::uint64_t block_interval_ticks, std::uint32_t miss_threshold);

    const std::vector<Pid>& delegates() const { return delegates_; }
    const std::vector<Pid>& runner_ups() const { return runner_ups_; }
    std::uint64_t stake_of(const Pid& pid) const;
    std::uint64_t block_interval_ticks() const { return block_interval_ticks_; }
    std::uint32_t miss_threshold() const { return miss_threshold_; }
    std::uint32_t missed_count(const Pid& pid) const;

    // Absolute slot number for a tick.
    std::uint64_t slot_for_tick(std::uint64_t tick) const {
        return tick / block_interval_ticks_;
    }

    // Pure rotation: delegates[(tick / interval) mod D].
    const Pid& producer_for_slot(std::uint64_t tick) const;

    // Records whether the slot's delegate produced. A produced slot clears
    // its miss counter; reaching the threshold evicts the delegate and
    // installs the highest-staked runner-up in the same slot position.
    // Throws ConsensusError(NoReplacement) when no runner-up remains.
    std::optional<Eviction> record_slot_outcome(std::uint64_t slot, bool produced);

    // Swaps an identity in place (same slot, same stake bookkeeping); used
    // when a delegate's identity is reset. Returns false if old_pid is not
    // a delegate.
    bool substitute(const Pid& old_pid, const Pid& new_pid);

  private:
    std::vector<Pid> delegates_;
    std::vector<Pid> runner_ups_;  // ordered by (stake desc, pid asc)
    std::unordered_map<Pid, std::uint64_t, PidHasher> stakes_;
    std::unordered_map<Pid, std::uint32_t, PidHasher> missed_counts_;
    std::uint64_t block_interval_ticks_ = 15;
    std::uint32_t miss_threshold_ = 3;
};

// Stake-weighted top-count election. Ties break toward the smaller pid, so
// identical vote multisets elect identical schedules regardless of vote
// order. Throws ConsensusError on a count outside bounds, fewer distinct
// candidates than count, or a non-positive stake.
DelegateSchedule elect_delegates(const std::vector<Vote>& votes, std::size_t count,
                                 std::uint64_t block_interval_ticks = 15,
                                 std::uint32_t miss_threshold = 3);

}  // namespace dpki::dpos

#endif  // DPKI_DPOS_HPP
