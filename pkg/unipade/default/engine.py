import os
from jinja2 import Environment, FileSystemLoader, StrictUndefined
from ..base import BaseEngine

TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "templates")


class Engine(BaseEngine):
    """
    Engine class responsible for rendering run reports using Jinja2.

    Args:
        templates_dir (str): Directory where the templates are stored. Defaults to the
            package `templates/` directory, which ships the Markdown report templates.

    Methods:
        render(template_name, context):
            Renders the specified template with the given context.

            Args:
                template_name (str): The name of the template to render.
                context (dict): The context to pass to the template.

            Returns:
                str: The rendered template as a string.
    """

    def __init__(self, templates_dir=TEMPLATES_DIR):
        self.env = Environment(
            loader=FileSystemLoader(templates_dir),
            undefined=StrictUndefined,
            keep_trailing_newline=True,
        )

    def render(self, template_name, context):
        template = self.env.get_template(template_name)
        return template.render(context)
