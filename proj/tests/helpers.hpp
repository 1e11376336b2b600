#pragma once

#include "rhn/types.hpp"

// Exact bitwise equality; Eigen has no bool operator== for dense objects.
inline bool bit_equal(const rhn::Matrix& a, const rhn::Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

inline bool bit_equal(const rhn::Vector& a, const rhn::Vector& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}
