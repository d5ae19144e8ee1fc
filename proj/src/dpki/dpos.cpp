// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#include "dpki/dpos.hpp"

#include <algorithm>

#include "dpki/errors.hpp"

namespace dpki::dpos {

DelegateSchedule::DelegateSchedule(std::vector<Pid> delegates, std::vector<Pid> runner_ups,
                                   std::unordered_map<Pid, std::uint64_t, PidHasher> stakes,
                                   std::uint64_t block_interval_ticks,
                                   std::uint32_t miss_threshold)
    : delegates_(std::move(delegates)),
      runner_ups_(std::move(runner_ups)),
      stakes_(std::move(stakes)),
      block_interval_ticks_(block_interval_ticks),
      miss_threshold_(miss_threshold) {
    if (block_interval_ticks_ == 0) throw ConsensusError("block interval must be positive");
    if (miss_threshold_ == 0) throw ConsensusError("miss threshold must be positive");
}

std::uint64_t DelegateSchedule::stake_of(const Pid& pid) const {
    auto it = stakes_.find(pid);
    return it == stakes_.end() ? 0 : it->second;
}

std::uint32_t DelegateSchedule::missed_count(const Pid& pid) const {
    auto it = missed_counts_.find(pid);
    return it == missed_counts_.end() ? 0 : it->second;
}

const Pid& DelegateSchedule::producer_for_slot(std::uint64_t tick) const {
    if (delegates_.empty()) throw ConsensusError("schedule has no delegates");
    return delegates_[slot_for_tick(tick) % delegates_.size()];
}

std::optional<Eviction> DelegateSchedule::record_slot_outcome(std::uint64_t slot,
                                                              bool produced) {
    if (delegates_.empty()) throw ConsensusError("schedule has no delegates");
    std::size_t index = slot % delegates_.size();
    const Pid pid = delegates_[index];

    if (produced) {
        missed_counts_[pid] = 0;
        return std::nullopt;
    }

    std::uint32_t misses = ++missed_counts_[pid];
    if (misses < miss_threshold_) return std::nullopt;

    if (runner_ups_.empty())
        throw ConsensusError("no replacement candidate available for evicted delegate");
    Pid replacement = runner_ups_.front();
    runner_ups_.erase(runner_ups_.begin());
    delegates_[index] = replacement;
    missed_counts_.erase(pid);
    missed_counts_[replacement] = 0;
    return Eviction{pid, replacement, index};
}

bool DelegateSchedule::substitute(const Pid& old_pid, const Pid& new_pid) {
    auto it = std::find(delegates_.begin(), delegates_.end(), old_pid);
    auto reserve = std::find(runner_ups_.begin(), runner_ups_.end(), old_pid);
    if (it == delegates_.end() && reserve == runner_ups_.end()) return false;
    // Renewal applies to the reserve list too: an eviction must never
    // install a retired identity.
    if (it != delegates_.end()) *it = new_pid;
    if (reserve != runner_ups_.end()) *reserve = new_pid;
    if (auto stake = stakes_.find(old_pid); stake != stakes_.end()) {
        stakes_[new_pid] = stake->second;
        stakes_.erase(stake);
    }
    if (auto missed = missed_counts_.find(old_pid); missed != missed_counts_.end()) {
        missed_counts_[new_pid] = missed->second;
        missed_counts_.erase(missed);
    }
    return true;
}

DelegateSchedule elect_delegates(const std::vector<Vote>& votes, std::size_t count,
                                 std::uint64_t block_interval_ticks,
                                 std::uint32_t miss_threshold) {
    if (count < kMinDelegates || count > kMaxDelegates)
        throw ConsensusError("delegate count outside the configured bounds");

    std::unordered_map<Pid, std::uint64_t, PidHasher> tally;
    for (const Vote& vote : votes) {
        if (vote.stake == 0) throw ConsensusError("vote carries no stake");
        tally[vote.candidate_pid] += vote.stake;
    }
    if (tally.size() < count)
        throw ConsensusError("insufficient candidates for the requested delegate count");

    std::vector<std::pair<Pid, std::uint64_t>> ranked(tally.begin(), tally.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<Pid> delegates, runner_ups;
    delegates.reserve(count);
    runner_ups.reserve(ranked.size() - count);
    for (std::size_t i = 0; i < ranked.size(); ++i)
        (i < count ? delegates : runner_ups).push_back(ranked[i].first);

    return DelegateSchedule(std::move(delegates), std::move(runner_ups), std::move(tally),
                            block_interval_ticks, miss_threshold);
}

}  // namespace dpki::dpos
