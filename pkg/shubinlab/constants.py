import math

DEFAULT_N = 256
DEFAULT_L = 16.0
DEFAULT_TAUS = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_SEED = 7

# p-quadrature for closed-form symbols
DEFAULT_P_MAX = 8.0
DEFAULT_P_NODES = 257
P_CHUNK = 16
NONDECAY_LIMIT = 1e-6

GAUSS_LEGENDRE_NODES = 16
T_BJ_QUADRATURE_NODES = 32

SYMPLECTIC_TOL = 1e-12
DET_TOL = 1e-10
SP0_REJECT_DET = 1e-6
TAYLOR_THRESHOLD = 1e-8
EDGE_LIMIT = 1e-6
NORM_FLOOR = 1e-12

FRESNEL_EPSILONS = (0.04, 0.02, 0.01, 0.005)
FRESNEL_TAIL = 37.0

# coherent-state probe offsets, per coordinate
PROBE_OFFSETS = (-0.5, 0.0, 0.5)

EIGHTH_TURN = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))

DEFAULT_OUTPUT_DIR = "shubinlab-out"
FORMATS = ("csv", "json")
