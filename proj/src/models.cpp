#include "rht/graded.hpp"
