from shubinlab.utils import is_env_var

STRICT_VALIDATION = is_env_var("SHUBINLAB_STRICT_VALIDATION")
DEBUG = is_env_var("SHUBINLAB_DEBUG")
