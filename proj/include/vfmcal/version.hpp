#ifndef VFMCAL_VERSION_HPP
#define VFMCAL_VERSION_HPP

namespace vfmcal {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vfmcal

#endif
