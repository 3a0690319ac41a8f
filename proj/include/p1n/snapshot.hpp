#pragma once

#include <string>

#include <p1n/grid.hpp>

namespace p1n {

/// Binary state snapshot, little-endian:
///   magic "P1N1", u32 version (1),
///   u32 n, u32 rep kind (0 trivial, 1 vector, 2 spin, 3 o4), u32 lorentz,
///   i32 2s, i32 2t, u32 rep dim, u32 class, i32 eps, u32 space tag
///   (0 momentum, 1 position), f64 mass,
///   per axis: f64 min, f64 step, u32 count,
///   then f64 (re, im) pairs, component-major, row-major grid order.
void save_snapshot(const std::string& path, const GridWaveFunction& f);

/// Reads a snapshot and reconstructs the representation from its labels.
/// Throws std::runtime_error on malformed input.
GridWaveFunction load_snapshot(const std::string& path);

}  // namespace p1n
