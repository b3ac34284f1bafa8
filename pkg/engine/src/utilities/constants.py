from enum import Enum, IntEnum


class ErrorMessages(Enum):
    DIMENSION_MISMATCH = "Point dimensions differ: {} vs {}"
    EMPTY_POINT_SET = "Point set '{}' is empty"
    NON_FINITE_POINT = "Point set '{}' contains a non-finite coordinate at index {}"
    DUPLICATE_POINT = "Point set '{}' repeats point {} (index {} duplicates index {})"
    TABLE_NOT_SQUARE = "Distance table must be a square matrix, got shape {}"
    TABLE_NEGATIVE = "Distance table has a negative entry at ({}, {})"
    TABLE_NON_FINITE = "Distance table has a non-finite entry at ({}, {})"
    TABLE_DIAGONAL = "Distance table has a non-zero diagonal entry at index {}"
    TABLE_ASYMMETRIC = "Distance table is not symmetric at ({}, {})"
    TABLE_INDISCERNIBLES = "Distance table has d({}, {}) = 0 for distinct indices"
    TABLE_TRIANGLE = "Distance table violates the triangle inequality: d({0},{2}) > d({0},{1}) + d({1},{2})"
    TABLE_MISSING = "Metric kind TABLE requires a distance table"
    TABLE_INDEX = "Point {} is not an index into the distance table of size {}"
    INVALID_STEP = "Segment sampler step must be positive, got {}"

    EMPTY_IMAGE = "Mapping sends A[{}] to an empty set"
    IMAGE_INDEX = "Mapping image of A[{}] references B index {} but B has {} points"
    MAP_NOT_TOTAL = "Mapping defines images for {} points but A has {} points"
    ALPHA_SHAPE = "Alpha table must be {0}x{0}, got shape {1}"
    ALPHA_NEGATIVE = "Alpha values must be finite and non-negative"

    THETA_DOMAIN = "Theta is defined on (0, inf); got t = {}"
    THETA_BASE = "POW_BASE family needs a base > 1, got {}"
    THETA_INVERSE_DOMAIN = "Theta inverse is defined on (1, inf); got v = {}"
    CONTRACTION_PARAMS = "Contraction parameters need 0 < k < 1 and lambda >= 0, got k = {}, lambda = {}"

    EMPTY_A0 = "No point of A realizes d(A, B); the proximal set A0 is empty"
    SEED_INDEX = "Seed {} = {} is out of range"
    SEED_NOT_IN_A0 = "Seed {} = {} is not in A0"
    SEED_NOT_IN_IMAGE = "Seed y0 = B[{}] is not in the image of x0 = A[{}]"
    SEED_NOT_PROXIMAL = "Seed pair d(x1, y0) = {} differs from d(A, B) = {}"
    SEED_ALPHA = "Seed pair has alpha(x0, x1) = {} < 1"
    NO_SEEDS = "No admissible seeds (x0, x1, y0) exist for this instance"
    NO_PARTNER = "B[{}] chosen at step {} has no d(A, B)-partner in A0; the range condition fails"
    FIXED_POINT_SETS = "Fixed-point mode needs A and B to be the same point set"

    INSTANCE_NOT_FOUND = "Instance file not found: {}"
    INSTANCE_PARSE = "Instance file {} is not valid JSON: {} (line {}, column {})"
    INSTANCE_VALIDATION = "Instance file {} failed validation at '{}': {}"
    INSTANCE_RANGE = "Instance field '{}' references index {} but only {} entries exist"

    KERNEL_DOMAIN = "Green kernel is defined on [0, 1] x [0, 1]; got ({}, {})"
    GRID_TOO_SMALL = "Grid needs at least 2 intervals, got {}"
    SIMPSON_ODD_GRID = "Simpson quadrature needs an even number of intervals, got {}"
    GRID_MISMATCH = "Grid function has {} nodes but the problem grid has {}"
    RHS_UNKNOWN = "Unknown right-hand side '{}'; expected constant:c, sin[:c], affine:a:g or scaled_sin:mu"
    RHS_LIPSCHITZ = "Right-hand side '{}' has Lipschitz constant {} > 1"
    RHS_FORCING = "Unknown forcing term '{}'; expected one of {}"
    BVP_NOT_CONVERGED = "Picard iteration did not reach {} within {} iterations (last step {})"

    REJECTION_EXHAUSTED = "Rejection budget of {} attempts exhausted without a weak-P instance"
    PROFILE_VALUE = "Generation profile needs {} {}, got {}"
    PROFILE_CAPACITY = "Lattice [-{0}, {0}]^{1} holds {2} points; the profile needs {3}"


class ExitCode(IntEnum):
    SUCCESS = 0
    INPUT_ERROR = 1
    HYPOTHESIS_VIOLATION = 2
    NOT_CONVERGED = 3


LATTICE_BOUND = 10
MAX_LATTICE_DIM = 8
STABILITY_SPREAD = 1.05
LIMIT_WINDOW = (1e-6, 1e9)
