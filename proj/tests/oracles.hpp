#pragma once

// Values frozen from an independent exact-fraction script run before the
// library was built. Tests compare against these, never against library
// output.

#include <array>
#include <string>
#include <utility>

namespace oracle {

/// mu(K_m), m = 0..12.
inline const std::array<const char*, 13> kStageMeasure{"1",         "4/5",       "7/10",      "13/20",    "5/8",
                                                       "49/80",     "97/160",    "193/320",   "77/128",   "769/1280",
                                                       "1537/2560", "3073/5120", "1229/2048"};

/// mu(K_6 ∩ (K_6 + u)).
inline const std::array<std::pair<const char*, const char*>, 6> kOverlapK6{{{"1/100", "99/200"},
                                                                            {"-1/100", "99/200"},
                                                                            {"1/20", "119/320"},
                                                                            {"-1/20", "119/320"},
                                                                            {"1/10", "87/256"},
                                                                            {"-1/10", "87/256"}}};

/// r-border measure of K_4 at r = 2^-j, j = 4..12.
inline const std::array<const char*, 9> kBorderK4{"21/20", "37/40", "7/10",  "31/80", "17/80",
                                                  "19/160", "1/16", "1/32", "1/64"};

inline constexpr const char* kBorderHalfAt100 = "1/25";   // [0,1/2], r = 1/100
inline constexpr const char* kBorderThirdAt64 = "1/16";   // [0,1/3], r = 1/64

inline constexpr int kArc3Z12Vc = 2;
inline constexpr int kArc3Z12DualVc = 2;

/// Endpoints of the 8 components of K_3.
inline const std::array<const char*, 16> kK3Endpoints{"0",       "13/160",  "3/32",    "7/40",   "9/40",  "49/160",
                                                     "51/160",  "2/5",     "3/5",     "109/160", "111/160", "31/40",
                                                     "33/40",   "29/32",   "147/160", "1"};

}  // namespace oracle
