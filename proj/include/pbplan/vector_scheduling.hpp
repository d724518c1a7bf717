#ifndef PBPLAN_VECTOR_SCHEDULING_HPP
#define PBPLAN_VECTOR_SCHEDULING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbplan {

/// m machines and 0-1 job vectors of a common dimension d. All-zero jobs
/// are rejected: they fit on any machine and carry no information.
class VSInstance {
public:
    VSInstance(std::size_t machines, std::vector<std::vector<int>> jobs)
        : machines_(machines), jobs_(std::move(jobs)) {
        if (machines_ < 1) {
            throw std::invalid_argument("vector scheduling needs at least one machine");
        }
        if (jobs_.empty()) {
            throw std::invalid_argument("vector scheduling needs at least one job");
        }
        dims_ = jobs_.front().size();
        if (dims_ < 1) {
            throw std::invalid_argument("job vectors need at least one dimension");
        }
        for (std::size_t k = 0; k < jobs_.size(); ++k) {
            const auto& q = jobs_[k];
            if (q.size() != dims_) {
                throw std::invalid_argument("job " + std::to_string(k) + " has dimension " + std::to_string(q.size()) +
                                            ", expected " + std::to_string(dims_));
            }
            if (std::any_of(q.begin(), q.end(), [](int x) { return x != 0 && x != 1; })) {
                throw std::invalid_argument("job " + std::to_string(k) + " is not a 0-1 vector");
            }
            if (std::none_of(q.begin(), q.end(), [](int x) { return x == 1; })) {
                throw std::invalid_argument("job " + std::to_string(k) + " is all-zero; drop it before scheduling");
            }
        }
    }

    std::size_t machines() const { return machines_; }
    std::size_t dims() const { return dims_; }
    std::size_t job_count() const { return jobs_.size(); }
    const std::vector<std::vector<int>>& jobs() const { return jobs_; }
    const std::vector<int>& job(std::size_t k) const { return jobs_.at(k); }

    friend bool operator==(const VSInstance&, const VSInstance&) = default;

private:
    std::size_t machines_ = 0;
    std::size_t dims_ = 0;
    std::vector<std::vector<int>> jobs_;
};

struct Schedule {
    std::vector<std::size_t> assignment; // job -> machine (0-based)
    std::int64_t makespan = 0;
};

/// Max over machines and dimensions of the summed job loads.
inline std::int64_t makespan_of(const VSInstance& inst, const std::vector<std::size_t>& assignment) {
    if (assignment.size() != inst.job_count()) {
        throw std::invalid_argument("schedule covers " + std::to_string(assignment.size()) + " jobs, instance has " +
                                    std::to_string(inst.job_count()));
    }
    std::vector<std::int64_t> load(inst.machines() * inst.dims(), 0);
    for (std::size_t k = 0; k < assignment.size(); ++k) {
        if (assignment[k] >= inst.machines()) {
            throw std::invalid_argument("job " + std::to_string(k) + " assigned to unknown machine " +
                                        std::to_string(assignment[k]));
        }
        for (std::size_t j = 0; j < inst.dims(); ++j) {
            load[assignment[k] * inst.dims() + j] += inst.job(k)[j];
        }
    }
    return *std::max_element(load.begin(), load.end());
}

inline Schedule make_schedule(const VSInstance& inst, std::vector<std::size_t> assignment) {
    Schedule s;
    s.makespan = makespan_of(inst, assignment);
    s.assignment = std::move(assignment);
    return s;
}

/// Exhaustive search over all m^l assignments (job 0 varies fastest);
/// the first optimum found wins.
inline Schedule brute_force_schedule(const VSInstance& inst, std::uint64_t budget = 10'000'000) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < inst.job_count(); ++k) {
        if (total > budget / inst.machines()) {
            throw std::length_error("brute-force schedule exceeds the enumeration budget of " + std::to_string(budget));
        }
        total *= inst.machines();
    }
    std::vector<std::size_t> current(inst.job_count(), 0);
    Schedule best = make_schedule(inst, current);
    while (true) {
        std::size_t k = 0;
        while (k < current.size() && ++current[k] == inst.machines()) {
            current[k++] = 0;
        }
        if (k == current.size()) {
            return best;
        }
        std::int64_t span = makespan_of(inst, current);
        if (span < best.makespan) {
            best = {current, span};
        }
    }
}

} // namespace pbplan

#endif
