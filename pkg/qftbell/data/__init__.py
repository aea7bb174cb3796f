from .data import SmearDatabase
