#include "rsdps/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rsdps {

// ---------------------------------------------------------------------------
// PreferenceOrder
// ---------------------------------------------------------------------------

PreferenceOrder::PreferenceOrder(std::vector<ObjectId> ranking) : ranking_(std::move(ranking)) {
    const std::size_t m = ranking_.size();
    if (m > std::numeric_limits<std::uint16_t>::max()) throw std::invalid_argument("too many objects");
    constexpr auto kUnset = std::numeric_limits<std::uint16_t>::max();
    position_.assign(m, kUnset);
    for (std::size_t pos = 0; pos < m; ++pos) {
        const std::size_t obj = ranking_[pos].index;
        if (obj >= m) throw std::invalid_argument("ranking mentions object " + std::to_string(obj) + " outside [0, m)");
        if (position_[obj] != kUnset) throw std::invalid_argument("ranking repeats object " + std::to_string(obj));
        position_[obj] = static_cast<std::uint16_t>(pos);
    }
}

PreferenceOrder::PreferenceOrder(std::initializer_list<std::size_t> ranking)
    : PreferenceOrder([&] {
          std::vector<ObjectId> ids;
          ids.reserve(ranking.size());
          for (auto r : ranking) ids.emplace_back(r);
          return ids;
      }()) {}

PreferenceOrder PreferenceOrder::identity(std::size_t m) {
    std::vector<ObjectId> ids;
    ids.reserve(m);
    for (std::size_t j = 0; j < m; ++j) ids.emplace_back(j);
    return PreferenceOrder(std::move(ids));
}

std::size_t PreferenceOrder::rank(ObjectId obj) const {
    if (obj.index >= position_.size()) {
        throw std::out_of_range("object " + std::to_string(obj.index) + " is not ranked");
    }
    return position_[obj.index];
}

std::size_t rank(const PreferenceOrder& pref, ObjectId obj) { return pref.rank(obj); }

std::vector<ObjectId> upper_contour(const PreferenceOrder& pref, ObjectId l) {
    const std::size_t last = pref.rank(l);
    auto ranking = pref.ranking();
    return {ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(last) + 1};
}

std::string default_object_name(std::size_t index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "o" + std::to_string(index + 1);
}

std::string default_agent_name(std::size_t index) { return std::to_string(index + 1); }

// ---------------------------------------------------------------------------
// Profile
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> default_names(std::size_t count, std::string (*namer)(std::size_t)) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 0; i < count; ++i) names.push_back(namer(i));
    return names;
}

std::size_t common_size(const std::vector<PreferenceOrder>& prefs) {
    if (prefs.empty()) throw std::invalid_argument("profile needs at least one agent");
    const std::size_t m = prefs.front().size();
    if (m == 0) throw std::invalid_argument("profile needs at least one object");
    for (const auto& p : prefs) {
        if (p.size() != m) throw DimensionError("agents rank different numbers of objects");
    }
    return m;
}

}  // namespace

Profile::Profile(std::vector<PreferenceOrder> prefs)
    : prefs_(std::move(prefs)),
      agent_names_(default_names(prefs_.size(), &default_agent_name)),
      object_names_(default_names(common_size(prefs_), &default_object_name)) {}

Profile::Profile(std::vector<PreferenceOrder> prefs, std::vector<std::string> agent_names,
                 std::vector<std::string> object_names)
    : prefs_(std::move(prefs)), agent_names_(std::move(agent_names)), object_names_(std::move(object_names)) {
    if (common_size(prefs_) != object_names_.size()) throw DimensionError("object name count does not match rankings");
    if (agent_names_.size() != prefs_.size()) throw DimensionError("agent name count does not match rankings");
}

Profile Profile::from_strings(const std::vector<std::string>& rankings) {
    if (rankings.empty()) throw std::invalid_argument("profile needs at least one agent");
    std::string objects = rankings.front();
    std::sort(objects.begin(), objects.end());
    std::vector<std::string> names;
    for (char c : objects) names.emplace_back(1, c);

    std::vector<PreferenceOrder> prefs;
    for (const auto& r : rankings) {
        if (r.size() != objects.size()) throw DimensionError("ranking '" + r + "' has the wrong length");
        std::vector<ObjectId> ids;
        for (char c : r) {
            auto it = std::find(objects.begin(), objects.end(), c);
            if (it == objects.end()) throw std::invalid_argument(std::string("unknown object '") + c + "'");
            ids.emplace_back(static_cast<std::size_t>(it - objects.begin()));
        }
        prefs.emplace_back(std::move(ids));
    }
    return Profile(std::move(prefs), default_names(rankings.size(), &default_agent_name), std::move(names));
}

std::optional<ObjectId> Profile::find_object(std::string_view name) const {
    for (std::size_t j = 0; j < object_names_.size(); ++j) {
        if (object_names_[j] == name) return ObjectId(j);
    }
    return std::nullopt;
}

Profile Profile::with_preference(AgentId agent, PreferenceOrder pref) const {
    if (pref.size() != m()) throw DimensionError("replacement ranking has the wrong length");
    Profile copy = *this;
    copy.prefs_.at(agent.index) = std::move(pref);
    return copy;
}

std::string Profile::describe(const PreferenceOrder& pref) const {
    std::string out = "(";
    for (std::size_t pos = 0; pos < pref.size(); ++pos) {
        if (pos) out += ' ';
        out += object_names_.at(pref[pos].index);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// AssignmentMatrix and feasibility
// ---------------------------------------------------------------------------

AssignmentMatrix matrix_from_strings(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return {};
    AssignmentMatrix out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != out.m()) throw DimensionError("ragged matrix");
        for (std::size_t j = 0; j < out.m(); ++j) out.at(i, j) = Rational::parse(rows[i][j]);
    }
    return out;
}

std::string FeasibilityViolation::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::EntryOutOfRange:
            os << "entry (" << row << ", " << column << ") = " << value << " is outside [0, 1]";
            break;
        case Kind::RowSum:
            os << "row " << row << " sums to " << value << ", expected " << expected;
            break;
        case Kind::ColumnSum:
            os << "column " << column << " sums to " << value << ", expected " << expected;
            break;
    }
    return os.str();
}

std::optional<FeasibilityViolation> validate(const AssignmentMatrix& matrix) {
    using Kind = FeasibilityViolation::Kind;
    const std::size_t n = matrix.n();
    const std::size_t m = matrix.m();
    const Rational zero(0), one(1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const Rational& v = matrix.at(i, j);
            if (v < zero || v > one) return FeasibilityViolation{Kind::EntryOutOfRange, i, j, v, v < zero ? zero : one};
        }
    }
    if (n == 0) return std::nullopt;
    const Rational row_target(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Rational sum;
        for (const auto& v : matrix.row(i)) sum += v;
        if (sum != row_target) return FeasibilityViolation{Kind::RowSum, i, 0, sum, row_target};
    }
    for (std::size_t j = 0; j < m; ++j) {
        Rational sum;
        for (std::size_t i = 0; i < n; ++i) sum += matrix.at(i, j);
        if (sum != one) return FeasibilityViolation{Kind::ColumnSum, 0, j, sum, one};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// PriorityOrdering
// ---------------------------------------------------------------------------

PriorityOrdering::PriorityOrdering(std::vector<AgentId> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (auto a : order_) {
        if (a.index >= order_.size()) throw std::invalid_argument("priority ordering mentions unknown agent");
        if (seen[a.index]) throw std::invalid_argument("priority ordering repeats an agent");
        seen[a.index] = true;
    }
}

PriorityOrdering::PriorityOrdering(std::initializer_list<std::size_t> order)
    : PriorityOrdering([&] {
          std::vector<AgentId> ids;
          for (auto a : order) ids.emplace_back(a);
          return ids;
      }()) {}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

std::uint64_t factorial(std::size_t m) {
    std::uint64_t out = 1;
    for (std::size_t k = 2; k <= m; ++k) {
        if (out > std::numeric_limits<std::uint64_t>::max() / k) {
            throw CapExceeded(std::to_string(m) + "! does not fit in 64 bits");
        }
        out *= k;
    }
    return out;
}

PreferenceOrder nth_permutation(std::size_t m, std::uint64_t index) {
    const std::uint64_t total = factorial(m);
    if (index >= total) throw std::out_of_range("permutation index out of range");
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<ObjectId> out;
    out.reserve(m);
    std::uint64_t block = total;
    for (std::size_t k = m; k > 0; --k) {
        block /= k;
        const auto digit = static_cast<std::size_t>(index / block);
        index %= block;
        out.emplace_back(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return PreferenceOrder(std::move(out));
}

std::uint64_t permutation_index(const PreferenceOrder& pref) {
    const std::size_t m = pref.size();
    std::uint64_t index = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        std::uint64_t smaller_later = 0;
        for (std::size_t later = pos + 1; later < m; ++later) {
            if (pref[later].index < pref[pos].index) ++smaller_later;
        }
        index = index * (m - pos) + smaller_later;
    }
    return index;
}

std::optional<std::uint64_t> profile_space_size(std::size_t n, std::size_t m) {
    std::uint64_t perms = 0;
    try {
        perms = factorial(m);
    } catch (const CapExceeded&) {
        return std::nullopt;
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (perms != 0 && total > std::numeric_limits<std::uint64_t>::max() / perms) return std::nullopt;
        total *= perms;
    }
    return total;
}

ProfileSpace::ProfileSpace(std::size_t n, std::size_t m, std::uint64_t size)
    : n_(n), m_(m), size_(size), perms_(factorial(m)) {
    orders_.reserve(perms_);
    for (std::uint64_t k = 0; k < perms_; ++k) orders_.push_back(nth_permutation(m, k));
}

Profile ProfileSpace::at(std::uint64_t index) const {
    if (index >= size_) throw std::out_of_range("profile index out of range");
    std::vector<PreferenceOrder> prefs(n_);
    for (std::size_t i = n_; i > 0; --i) {
        prefs[i - 1] = orders_[index % perms_];
        index /= perms_;
    }
    return Profile(std::move(prefs));
}

ProfileSpace enumerate_profiles(std::size_t n, std::size_t m, std::uint64_t cap) {
    if (n == 0 || m == 0) throw std::invalid_argument("need n >= 1 and m >= 1");
    auto size = profile_space_size(n, m);
    if (!size || *size > cap) {
        throw CapExceeded("(" + std::to_string(m) + "!)^" + std::to_string(n) +
                          " profiles exceed the enumeration cap of " + std::to_string(cap) +
                          "; sample profiles instead");
    }
    return ProfileSpace(n, m, *size);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty range");
    // Largest multiple of bound representable; reject draws above it.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

PreferenceOrder sample_preference(std::size_t m, Rng& rng) {
    std::vector<ObjectId> ids;
    ids.reserve(m);
    for (std::size_t j = 0; j < m; ++j) ids.emplace_back(j);
    for (std::size_t k = m; k > 1; --k) {
        std::swap(ids[k - 1], ids[uniform_below(rng, k)]);
    }
    return PreferenceOrder(std::move(ids));
}

Profile sample_profile(std::size_t n, std::size_t m, Rng& rng) {
    if (n == 0 || m == 0) throw std::invalid_argument("need n >= 1 and m >= 1");
    std::vector<PreferenceOrder> prefs;
    prefs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) prefs.push_back(sample_preference(m, rng));
    return Profile(std::move(prefs));
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates) noexcept {
    std::uint64_t s = mix64(master);
    for (auto c : coordinates) s = mix64(s ^ c);
    return s;
}

}  // namespace rsdps
