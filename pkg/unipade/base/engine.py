from .base import ABC, abstractmethod


class BaseEngine(ABC):
    """
    Renders the Markdown companion of a JSON artifact. Templates receive the artifact
    prefix, the document under its context key, and any extra entries.
    """

    @staticmethod
    def report_context(prefix: str, key: str, document, extra: dict = None) -> dict:
        context = {"prefix": prefix, key: document}
        context.update(extra or {})
        return context

    @abstractmethod
    def render(self, template_name: str, context: dict) -> str:
        pass
