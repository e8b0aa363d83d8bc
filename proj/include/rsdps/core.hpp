#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsdps/errors.hpp"
#include "rsdps/rational.hpp"

namespace rsdps {

template <typename Tag>
struct StrongIndex {
    std::size_t index = 0;

    constexpr StrongIndex() = default;
    constexpr explicit StrongIndex(std::size_t i) : index(i) {}

    friend constexpr auto operator<=>(StrongIndex, StrongIndex) = default;
};

using ObjectId = StrongIndex<struct ObjectTag>;
using AgentId = StrongIndex<struct AgentTag>;

/// Strict, complete ranking of the objects {0, ..., m-1}, most preferred first.
class PreferenceOrder {
public:
    PreferenceOrder() = default;
    explicit PreferenceOrder(std::vector<ObjectId> ranking);
    PreferenceOrder(std::initializer_list<std::size_t> ranking);

    /// Identity ranking 0 > 1 > ... > m-1.
    static PreferenceOrder identity(std::size_t m);

    [[nodiscard]] std::size_t size() const noexcept { return ranking_.size(); }
    [[nodiscard]] ObjectId operator[](std::size_t position) const noexcept { return ranking_[position]; }
    [[nodiscard]] std::span<const ObjectId> ranking() const noexcept { return ranking_; }

    /// 0-based position of `obj`; throws std::out_of_range for unknown objects.
    [[nodiscard]] std::size_t rank(ObjectId obj) const;
    /// Position lookup without bounds checking.
    [[nodiscard]] std::size_t position_unchecked(ObjectId obj) const noexcept { return position_[obj.index]; }
    [[nodiscard]] bool prefers(ObjectId a, ObjectId b) const { return rank(a) < rank(b); }

    friend bool operator==(const PreferenceOrder& a, const PreferenceOrder& b) noexcept {
        return a.ranking_ == b.ranking_;
    }

private:
    std::vector<ObjectId> ranking_;
    std::vector<std::uint16_t> position_;
};

[[nodiscard]] std::size_t rank(const PreferenceOrder& pref, ObjectId obj);

/// Objects weakly preferred to `l` (including `l`), most preferred first.
[[nodiscard]] std::vector<ObjectId> upper_contour(const PreferenceOrder& pref, ObjectId l);

[[nodiscard]] std::string default_object_name(std::size_t index);
[[nodiscard]] std::string default_agent_name(std::size_t index);

/// A one-sided matching instance: n agents with strict rankings over m objects.
class Profile {
public:
    explicit Profile(std::vector<PreferenceOrder> prefs);
    Profile(std::vector<PreferenceOrder> prefs, std::vector<std::string> agent_names,
            std::vector<std::string> object_names);

    /// Builds a profile from rankings written as object-name strings, e.g. {"acb", "abc"}.
    /// Objects are the single characters of the first string, ordered alphabetically.
    static Profile from_strings(const std::vector<std::string>& rankings);

    [[nodiscard]] std::size_t n() const noexcept { return prefs_.size(); }
    [[nodiscard]] std::size_t m() const noexcept { return object_names_.size(); }
    [[nodiscard]] const PreferenceOrder& pref(AgentId agent) const { return prefs_.at(agent.index); }
    [[nodiscard]] const PreferenceOrder& pref(std::size_t agent) const { return prefs_.at(agent); }
    [[nodiscard]] std::span<const PreferenceOrder> prefs() const noexcept { return prefs_; }

    [[nodiscard]] const std::vector<std::string>& agent_names() const noexcept { return agent_names_; }
    [[nodiscard]] const std::vector<std::string>& object_names() const noexcept { return object_names_; }
    [[nodiscard]] const std::string& object_name(ObjectId obj) const { return object_names_.at(obj.index); }
    [[nodiscard]] std::optional<ObjectId> find_object(std::string_view name) const;

    /// Copy of this profile with agent `agent` reporting `pref` instead.
    [[nodiscard]] Profile with_preference(AgentId agent, PreferenceOrder pref) const;

    /// Ranking rendered with object names, e.g. "(a c b)".
    [[nodiscard]] std::string describe(const PreferenceOrder& pref) const;

    friend bool operator==(const Profile& a, const Profile& b) noexcept { return a.prefs_ == b.prefs_; }

private:
    std::vector<PreferenceOrder> prefs_;
    std::vector<std::string> agent_names_;
    std::vector<std::string> object_names_;
};

/// Dense n x m matrix of exact probabilities; entry (i, j) is agent i's share of object j.
class AssignmentMatrix {
public:
    AssignmentMatrix() = default;
    AssignmentMatrix(std::size_t n, std::size_t m) : n_(n), m_(m), entries_(n * m) {}

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return m_; }

    [[nodiscard]] const Rational& at(std::size_t agent, std::size_t object) const { return entries_[agent * m_ + object]; }
    [[nodiscard]] Rational& at(std::size_t agent, std::size_t object) { return entries_[agent * m_ + object]; }
    [[nodiscard]] std::span<const Rational> row(std::size_t agent) const {
        return std::span<const Rational>(entries_).subspan(agent * m_, m_);
    }
    [[nodiscard]] std::span<Rational> row(std::size_t agent) { return std::span<Rational>(entries_).subspan(agent * m_, m_); }

    friend bool operator==(const AssignmentMatrix&, const AssignmentMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<Rational> entries_;
};

/// Builds a matrix from rows of "p/q" strings; convenient for fixtures.
[[nodiscard]] AssignmentMatrix matrix_from_strings(const std::vector<std::vector<std::string>>& rows);

struct FeasibilityViolation {
    enum class Kind { EntryOutOfRange, RowSum, ColumnSum };
    Kind kind;
    std::size_t row = 0;     // agent index (EntryOutOfRange, RowSum)
    std::size_t column = 0;  // object index (EntryOutOfRange, ColumnSum)
    Rational value;          // offending entry or sum
    Rational expected;       // bound or required sum

    [[nodiscard]] std::string describe() const;
};

/// Checks entries in [0, 1], column sums 1 and row sums m/n.
/// Returns the first violation found (entries, then rows, then columns).
[[nodiscard]] std::optional<FeasibilityViolation> validate(const AssignmentMatrix& matrix);

/// Priority over agents; position 0 picks first.
class PriorityOrdering {
public:
    explicit PriorityOrdering(std::vector<AgentId> order);
    PriorityOrdering(std::initializer_list<std::size_t> order);

    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    [[nodiscard]] AgentId operator[](std::size_t position) const noexcept { return order_[position]; }
    [[nodiscard]] std::span<const AgentId> order() const noexcept { return order_; }

private:
    std::vector<AgentId> order_;
};

// ---------------------------------------------------------------------------
// Permutations and profile space
// ---------------------------------------------------------------------------

/// m!, throwing CapExceeded when it does not fit in 64 bits.
[[nodiscard]] std::uint64_t factorial(std::size_t m);

/// The permutation of {0..m-1} with lexicographic rank `index` (Lehmer code decoding).
[[nodiscard]] PreferenceOrder nth_permutation(std::size_t m, std::uint64_t index);
[[nodiscard]] std::uint64_t permutation_index(const PreferenceOrder& pref);

/// (m!)^n, or nullopt if it exceeds 2^64 - 1.
[[nodiscard]] std::optional<std::uint64_t> profile_space_size(std::size_t n, std::size_t m);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Random-access view of all (m!)^n profiles.
///
/// Profile k assigns agent i the permutation whose Lehmer rank is digit i of k
/// written in base m!, with agent 0 as the most significant digit.
class ProfileSpace {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Profile;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const ProfileSpace* space, std::uint64_t index) : space_(space), index_(index) {}

        Profile operator*() const { return space_->at(index_); }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        iterator operator++(int) {
            auto copy = *this;
            ++index_;
            return copy;
        }
        friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

    private:
        const ProfileSpace* space_ = nullptr;
        std::uint64_t index_ = 0;
    };

    ProfileSpace(std::size_t n, std::size_t m, std::uint64_t size);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return m_; }
    [[nodiscard]] std::uint64_t size() const noexcept { return size_; }
    [[nodiscard]] Profile at(std::uint64_t index) const;

    [[nodiscard]] iterator begin() const { return {this, 0}; }
    [[nodiscard]] iterator end() const { return {this, size_}; }

private:
    std::size_t n_;
    std::size_t m_;
    std::uint64_t size_;
    std::uint64_t perms_;
    std::vector<PreferenceOrder> orders_;
};

/// All profiles of n agents over m objects. Throws CapExceeded when (m!)^n > cap.
[[nodiscard]] ProfileSpace enumerate_profiles(std::size_t n, std::size_t m,
                                              std::uint64_t cap = kDefaultEnumerationCap);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Unbiased integer in [0, bound) by rejection; independent of the standard
/// library's distribution implementation so outputs are portable.
[[nodiscard]] std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniformly random permutation of m objects (Fisher-Yates).
[[nodiscard]] PreferenceOrder sample_preference(std::size_t m, Rng& rng);

/// Each agent independently draws a uniform ranking.
[[nodiscard]] Profile sample_profile(std::size_t n, std::size_t m, Rng& rng);

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for one task, derived from the master seed and the task coordinates.
/// Chained mixing: s = mix64(master); s = mix64(s ^ c) for each coordinate c.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates) noexcept;

}  // namespace rsdps
