#pragma once

#include "bloch.hpp"
#include "capacity.hpp"
#include "channel.hpp"
#include "detection.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "ordering.hpp"
#include "parallel.hpp"
#include "region.hpp"
#include "secular.hpp"
#include "spec_io.hpp"
#include "svd3.hpp"
