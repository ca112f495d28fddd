#ifndef DCP_DCP_HPP
#define DCP_DCP_HPP

#include "dcp/action.hpp"
#include "dcp/common.hpp"
#include "dcp/errors.hpp"
#include "dcp/expm.hpp"
#include "dcp/fock.hpp"
#include "dcp/interferometer.hpp"
#include "dcp/wave.hpp"

#endif  // DCP_DCP_HPP
