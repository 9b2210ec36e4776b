from CogSystem.errors import CogError
from CogSystem.system import CognitiveSystem, RunConfig, read_run_config
