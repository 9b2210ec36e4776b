from CogSystem.agents.base import AgentKind, QuestionAnswer
from CogSystem.agents.baseline import BaselineAgent
from CogSystem.bench import Question
from CogSystem.prompts import parse_interpretation, parse_reflection


class Reflexion(BaselineAgent):
    """
    Self-reflective baseline. Each question takes two completions: a reflection on the previous answer and
    its feedback, then the rating with that reflection prepended.
    """

    kind = AgentKind.REFLEXION

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self.previous: dict[str, QuestionAnswer] = {}

    def _previous_answer(self, question: Question) -> str:
        answer = self.previous.get(question.id)
        if answer is None:
            return "None"
        return f"Thoughts: {answer.reasoning}\nRating: {answer.rating}"

    def forward(self, question: Question) -> QuestionAnswer:
        context = {
            "profile": self.initial_profile.to_text(),
            "information": self.information,
            "question": question.statement,
        }
        reflection = self.prompt(
            "reflexion_reflect",
            self.template("reflect_prompt").format(
                previous_answer=self._previous_answer(question),
                feedback=self.previous_feedback(question),
                **context,
            ),
            parse_reflection,
            question_id=question.id,
        )
        parsed = self.prompt(
            "reflexion_answer",
            self.template("answer_prompt").format(reflection=reflection, **context),
            parse_interpretation,
            question_id=question.id,
        )
        answer = QuestionAnswer(
            question_id=question.id,
            rating=parsed.rating,
            reasoning=parsed.thoughts,
            reflection=reflection,
        )
        self.previous[question.id] = answer
        return answer
