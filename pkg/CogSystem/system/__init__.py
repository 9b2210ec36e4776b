from CogSystem.system.config import RunConfig, read_run_config
from CogSystem.system.base import System
from CogSystem.system.session import CognitiveSystem, SessionLog, run_session
