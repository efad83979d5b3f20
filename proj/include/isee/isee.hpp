#pragma once

#include "isee/applications.hpp"
#include "isee/block_fit.hpp"
#include "isee/cross_validation.hpp"
#include "isee/errors.hpp"
#include "isee/estimate.hpp"
#include "isee/kernels.hpp"
#include "isee/metrics.hpp"
#include "isee/partition.hpp"
#include "isee/pipeline.hpp"
#include "isee/scaled_lasso.hpp"
#include "isee/screening.hpp"
#include "isee/simgen.hpp"
#include "isee/student_t.hpp"
#include "isee/types.hpp"
