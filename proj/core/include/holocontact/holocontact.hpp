#pragma once

#include "holocontact/contact.hpp"
#include "holocontact/errors.hpp"
#include "holocontact/geometry.hpp"
#include "holocontact/jet.hpp"
#include "holocontact/kernel_expr.hpp"
#include "holocontact/linalg.hpp"
#include "holocontact/multi_index.hpp"
#include "holocontact/pascal.hpp"
#include "holocontact/rkhs.hpp"
#include "holocontact/types.hpp"
#include "holocontact/wordcalc.hpp"
