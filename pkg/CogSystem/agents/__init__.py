from CogSystem.agents.feedback import FeedbackBook, FeedbackEntry, load_feedback
from CogSystem.agents.base import (
    Agent,
    AgentKind,
    Exchange,
    IterationRecord,
    QuestionAnswer,
)
from CogSystem.agents.coggpt import CogGPT, merge_profile
from CogSystem.agents.baseline import BaselineAgent
from CogSystem.agents.cot import CoT
from CogSystem.agents.react import ReAct
from CogSystem.agents.reflexion import Reflexion
from CogSystem.agents.config import (
    AGENT_CLASSES,
    AgentConfig,
    build_agent,
    read_agent_config,
)
