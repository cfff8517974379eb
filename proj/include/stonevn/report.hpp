#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace stonevn {

// Outcome of one verification pass. Stored failure messages are capped so a
// systematic breakage stays readable; `failures` keeps the true count.
struct CheckReport {
    static constexpr std::size_t max_failure_samples = 12;

    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_samples;
    std::vector<std::string> warnings;

    CheckReport() = default;
    explicit CheckReport(std::string check_name) : name(std::move(check_name)) {}

    bool passed() const { return failures == 0; }
    bool vacuous() const { return checks == 0; }

    void pass(std::size_t n = 1) { checks += n; }

    void fail(std::string message) {
        ++checks;
        ++failures;
        if (failure_samples.size() < max_failure_samples)
            failure_samples.push_back(std::move(message));
    }

    void require(bool ok, const std::string& message) {
        if (ok) ++checks; else fail(message);
    }

    // Lazy-message variant for hot loops: the message is only built on failure.
    template <class MessageFn>
    void require_lazy(bool ok, MessageFn&& message) {
        if (ok) ++checks; else fail(message());
    }

    void warn(std::string message) { warnings.push_back(std::move(message)); }

    // Merging is associative, so reports from independently-run stages can be
    // folded in any grouping.
    void merge(const CheckReport& other) {
        checks += other.checks;
        failures += other.failures;
        for (const auto& s : other.failure_samples)
            if (failure_samples.size() < max_failure_samples) failure_samples.push_back(s);
        for (const auto& w : other.warnings) warnings.push_back(w);
    }
};

// Verification record for one natural isomorphism: a bijectivity/structure
// row per object touched, a commutation row per morphism square tested.
struct NaturalIsoReport {
    struct ObjectCheck {
        std::string object;
        std::size_t size = 0;
        bool bijective = false;
        bool ops_preserved = true; // stays true for purely point-level components
    };

    struct SquareCheck {
        std::string morphism;
        bool commutes = false;
    };

    std::string name;
    std::vector<ObjectCheck> objects;
    std::vector<SquareCheck> squares;

    bool passed() const {
        for (const auto& o : objects)
            if (!o.bijective || !o.ops_preserved) return false;
        for (const auto& s : squares)
            if (!s.commutes) return false;
        return true;
    }

    // Flatten into a CheckReport for aggregation.
    CheckReport summary() const {
        CheckReport r(name);
        for (const auto& o : objects) {
            r.require(o.bijective, name + ": component at " + o.object + " not bijective");
            r.require(o.ops_preserved, name + ": component at " + o.object + " breaks operations");
        }
        for (const auto& s : squares)
            r.require(s.commutes, name + ": square at " + s.morphism + " does not commute");
        return r;
    }
};

} // namespace stonevn
