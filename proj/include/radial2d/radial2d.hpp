#ifndef RADIAL2D_RADIAL2D_HPP
#define RADIAL2D_RADIAL2D_HPP

#include "radial2d/asymptotics.hpp"
#include "radial2d/bounds.hpp"
#include "radial2d/channels.hpp"
#include "radial2d/errors.hpp"
#include "radial2d/parallel.hpp"
#include "radial2d/potential.hpp"
#include "radial2d/quadrature.hpp"
#include "radial2d/spec_io.hpp"
#include "radial2d/spectral1d.hpp"
#include "radial2d/weakseq.hpp"

namespace radial2d {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // RADIAL2D_RADIAL2D_HPP
