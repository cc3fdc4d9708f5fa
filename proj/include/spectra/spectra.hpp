#pragma once

#include "spectra/analytic.hpp"
#include "spectra/canonical.hpp"
#include "spectra/enumerate.hpp"
#include "spectra/error.hpp"
#include "spectra/families.hpp"
#include "spectra/graph.hpp"
#include "spectra/independence.hpp"
#include "spectra/input.hpp"
#include "spectra/io.hpp"
#include "spectra/minimizer.hpp"
#include "spectra/poly.hpp"
#include "spectra/spectral.hpp"
#include "spectra/structure.hpp"
#include "spectra/transforms.hpp"
#include "spectra/verify.hpp"
