"""
Imports BaseModel from Pydantic for defining the error payload of the CLI.
"""

from typing import Optional

from pydantic import BaseModel, Field


class ErrorResponse(BaseModel):
    """
    Base Pydantic model for defining Error data
    Attributes:
        detail will provide the description about the error
        exit_code will provide the process exit code
        error_type names the exception class
        location points into the instance file (line/column or field path) when known
    """

    detail: str
    exit_code: int
    error_type: str = Field(default="BppToolkitError")
    location: Optional[str] = None
