from CogSystem.agents.base import AgentKind, QuestionAnswer
from CogSystem.agents.baseline import BaselineAgent
from CogSystem.bench import Question
from CogSystem.prompts import parse_interpretation


class ReAct(BaselineAgent):
    """
    Reasoning-and-acting baseline. Human feedback on the previous iteration enters as the Observation of a
    Thought / Action / Observation scaffold before the final rating.
    """

    kind = AgentKind.REACT

    def forward(self, question: Question) -> QuestionAnswer:
        observation = self.previous_feedback(question)
        self.observation(observation, log_head=f"[t={self.iteration}] {question.id} ")
        prompt = self.template("react_prompt").format(
            profile=self.initial_profile.to_text(),
            information=self.information,
            question=question.statement,
            observation=observation,
        )
        parsed = self.prompt("react", prompt, parse_interpretation, question_id=question.id)
        return QuestionAnswer(
            question_id=question.id, rating=parsed.rating, reasoning=parsed.thoughts
        )
