#pragma once

// Everything inside the library is SI (m, Pa, N). These helpers are the only
// place where millimetres and megapascals are converted.

namespace kirimech::units {

constexpr double kMmPerM = 1000.0;
constexpr double kPaPerMPa = 1.0e6;

constexpr double from_mm(double mm) { return mm / kMmPerM; }
constexpr double to_mm(double m) { return m * kMmPerM; }
constexpr double from_mpa(double mpa) { return mpa * kPaPerMPa; }
constexpr double to_mpa(double pa) { return pa / kPaPerMPa; }

/// Nudges a length (m) to a nearby value that survives to_mm/from_mm exactly,
/// so that lengths written to CSV in mm read back as the same double.
double snap_to_mm_grid(double m);

}  // namespace kirimech::units
