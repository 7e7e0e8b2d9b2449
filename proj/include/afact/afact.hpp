#pragma once

#include "afact/error.hpp"
#include "afact/special.hpp"
#include "afact/quadrature.hpp"
#include "afact/certificate.hpp"
#include "afact/symbols.hpp"
#include "afact/fft.hpp"
#include "afact/group.hpp"
#include "afact/multiplier.hpp"
#include "afact/representation.hpp"
#include "afact/strongfact.hpp"
#include "afact/report.hpp"
