#pragma once

#include <string>

#include "pwldyn/rational.hpp"

namespace pwldyn {

struct Interval {
    Rational lo;
    Rational hi;

    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw DomainError("interval with lo > hi");
    }

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const {
        return lo <= other.lo && other.hi <= hi;
    }
    bool degenerate() const { return lo == hi; }
    Rational midpoint() const { return (lo + hi) / 2; }
    Rational length() const { return hi - lo; }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }

    std::string str() const {
        return "[" + to_string(lo) + ", " + to_string(hi) + "]";
    }
};

}  // namespace pwldyn
