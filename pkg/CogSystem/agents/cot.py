from CogSystem.agents.base import AgentKind, QuestionAnswer
from CogSystem.agents.baseline import BaselineAgent
from CogSystem.bench import Question
from CogSystem.prompts import parse_interpretation


class CoT(BaselineAgent):
    """Chain-of-thought baseline: one step-by-step completion per question."""

    kind = AgentKind.COT

    def forward(self, question: Question) -> QuestionAnswer:
        prompt = self.template("cot_prompt").format(
            profile=self.initial_profile.to_text(),
            information=self.information,
            question=question.statement,
        )
        parsed = self.prompt("cot", prompt, parse_interpretation, question_id=question.id)
        return QuestionAnswer(
            question_id=question.id, rating=parsed.rating, reasoning=parsed.thoughts
        )
